#include "qwalk/sgf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk::sgf {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

double max_abs(const Vector2& v) { return std::max(std::abs(v[0]), std::abs(v[1])); }

double row_sum_norm(const Matrix2& m) {
  return std::max(std::abs(m.a) + std::abs(m.b), std::abs(m.c) + std::abs(m.d));
}

Vector2 apply(const Matrix2& m, const Vector2& v) {
  return {m.a * v[0] + m.b * v[1], m.c * v[0] + m.d * v[1]};
}

double series_ratio(const wojcik::StationarySolution& sol, Side side, Complex z) {
  return side == Side::Plus ? std::abs(sol.theta_s * z) : std::abs(sol.theta_s / z);
}

void require_convergent(const wojcik::StationarySolution& sol, Side side, Complex z) {
  if (z == 0.0) throw DomainError("generating functions are evaluated at z != 0");
  const double ratio = series_ratio(sol, side, z);
  if (!(ratio < 1.0 - kConvergenceMargin)) {
    const std::string which = side == Side::Plus ? "|theta_s z|" : "|theta_s / z|";
    throw DivergentSeriesError(which + " = " + std::to_string(ratio) +
                                   " is outside the convergence radius (needs < 1 - 1e-6)",
                               ratio);
  }
}

}  // namespace

GenFunSystem build_system(Complex z, Complex lambda, Complex omega, Complex alpha, Complex beta) {
  if (z == 0.0) throw DomainError("build_system: z must be nonzero");
  if (lambda == 0.0) throw DomainError("build_system: lambda must be nonzero");
  GenFunSystem sys;
  sys.z = z;
  sys.lambda = lambda;
  sys.a_matrix = {lambda - 1.0 / (kSqrt2 * z), -1.0 / (kSqrt2 * z), -z / kSqrt2, lambda + z / kSqrt2};
  sys.rhs_plus = {-lambda * alpha, omega * z * (alpha - beta) / kSqrt2};
  sys.rhs_minus = {omega * (alpha + beta) / (kSqrt2 * z), -lambda * beta};
  return sys;
}

RootPair det_A_roots(Complex lambda) {
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12) {
    throw DomainError("det_A_roots: lambda must have unit modulus");
  }
  // z^2 + b z - 1 = 0
  const Complex b = -kSqrt2 * (1.0 / lambda - lambda);
  Complex root = std::sqrt(b * b + 4.0);
  if ((std::conj(b) * root).real() < 0.0) root = -root;
  const Complex q = -(b + root) / 2.0;
  Complex r1 = q;
  Complex r2 = -1.0 / q;

  const double m1 = std::abs(r1);
  const double m2 = std::abs(r2);
  const bool tie = std::abs(m1 - m2) <= 1e-12 * std::max(m1, m2);
  if ((tie && std::arg(r2) < std::arg(r1)) || (!tie && m2 < m1)) std::swap(r1, r2);
  return {r1, r2};
}

Complex truncated_series(const wojcik::StationarySolution& sol, Side side, Chirality chirality,
                         Complex z, int terms) {
  if (terms < 0) throw DomainError("number of series terms must be >= 0");
  require_convergent(sol, side, z);

  const int dir = side == Side::Plus ? 1 : -1;
  const Complex zstep = side == Side::Plus ? z : 1.0 / z;
  Complex zpow = 1.0;
  Complex sum = 0.0;
  for (int k = 1; k <= terms; ++k) {
    zpow *= zstep;
    const Amplitude psi = wojcik::stationary_amplitude(sol, dir * k);
    sum += (chirality == Chirality::Left ? psi.left : psi.right) * zpow;
  }
  return sum;
}

Lemma1Residual lemma1_residual(const wojcik::StationarySolution& sol, Complex z, int terms) {
  require_convergent(sol, Side::Plus, z);
  require_convergent(sol, Side::Minus, z);

  const GenFunSystem sys = build_system(z, sol.lambda, sol.omega(), sol.alpha, sol.beta);
  const Vector2 f_plus{truncated_series(sol, Side::Plus, Chirality::Left, z, terms),
                       truncated_series(sol, Side::Plus, Chirality::Right, z, terms)};
  const Vector2 f_minus{truncated_series(sol, Side::Minus, Chirality::Left, z, terms),
                        truncated_series(sol, Side::Minus, Chirality::Right, z, terms)};

  auto residual = [&](const Vector2& f, const Vector2& rhs) {
    const Vector2 lhs = apply(sys.a_matrix, f);
    return max_abs({lhs[0] - rhs[0], lhs[1] - rhs[1]});
  };

  Lemma1Residual out;
  out.plus = residual(f_plus, sys.rhs_plus);
  out.minus = residual(f_minus, sys.rhs_minus);

  // Tail of side s: v_s * rho_s^(terms+1) / (1 - rho_s) in max-norm, where v_s is
  // the x = +-1 amplitude divided by (-theta_s) or theta_s respectively.
  const double norm_a = row_sum_norm(sys.a_matrix);
  const Complex w = sol.omega();
  const double v_plus = max_abs({sol.alpha, (1.0 - w) * sol.alpha + w * sol.beta});
  const double v_minus = max_abs({(w - 1.0) * sol.beta + w * sol.alpha, sol.beta});
  const double rho_plus = series_ratio(sol, Side::Plus, z);
  const double rho_minus = series_ratio(sol, Side::Minus, z);
  const double zabs = std::abs(z);

  out.bound_plus = norm_a * v_plus * std::pow(rho_plus, terms + 1) / (1.0 - rho_plus);
  out.bound_minus = norm_a * v_minus * std::pow(rho_minus, terms + 1) / (1.0 - rho_minus);
  // bound_s / |theta_s|^terms, rearranged to avoid underflow of |theta_s|^terms.
  const double c_plus = norm_a * v_plus * rho_plus * std::pow(zabs, terms) / (1.0 - rho_plus);
  const double c_minus = norm_a * v_minus * rho_minus * std::pow(1.0 / zabs, terms) / (1.0 - rho_minus);
  out.constant = std::max(c_plus, c_minus);
  return out;
}

}  // namespace qwalk::sgf
