#include "qwalk/wojcik.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk::wojcik {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kSqrt2 = std::numbers::sqrt2;

void require_nonsingular(Complex denom, const char* expression, double phi) {
  if (std::abs(denom) < kSingularTolerance) throw SingularParameterError(expression, phi);
}

}  // namespace

std::string_view to_string(Branch b) { return b == Branch::PlusI ? "plus-i" : "minus-i"; }

std::optional<Branch> parse_branch(std::string_view s) {
  if (s == "plus-i") return Branch::PlusI;
  if (s == "minus-i") return Branch::MinusI;
  return std::nullopt;
}

std::string_view to_string(DecayClass c) {
  switch (c) {
    case DecayClass::Decaying:
      return "DECAYING";
    case DecayClass::Marginal:
      return "MARGINAL";
    case DecayClass::Growing:
      return "GROWING";
  }
  return "MARGINAL";
}

std::optional<DecayClass> parse_decay_class(std::string_view s) {
  if (s == "DECAYING") return DecayClass::Decaying;
  if (s == "MARGINAL") return DecayClass::Marginal;
  if (s == "GROWING") return DecayClass::Growing;
  return std::nullopt;
}

Complex int_power(Complex z, unsigned n) {
  Complex result = 1.0;
  while (n != 0) {
    if (n & 1u) result *= z;
    z *= z;
    n >>= 1u;
  }
  return result;
}

Complex lambda_squared(double phi, Branch branch) {
  require_open_unit_phase(phi);
  const Complex w = unit_phase(phi);
  const double s = branch_sign(branch);
  const Complex denom = 1.0 - 2.0 * w + 2.0 * w * w;
  require_nonsingular(denom, "1 - 2 omega + 2 omega^2", phi);
  const Complex numer = w * (1.0 - 2.0 * w + w * w) - s * kI * w * (1.0 - w + w * w);
  return numer / denom;
}

Complex select_lambda(Complex lambda_sq) {
  if (std::abs(std::abs(lambda_sq) - 1.0) > 1e-12) {
    throw DomainError("lambda^2 must have unit modulus");
  }
  double arg = std::arg(lambda_sq);
  // -1 - 0i sits on the cut; map it to +pi so the halved argument is pi/2.
  if (lambda_sq.imag() == 0.0 && lambda_sq.real() < 0.0) arg = std::numbers::pi;
  return std::polar(1.0, arg / 2.0);
}

Complex theta_s_form1(Complex lambda, Complex omega, Complex alpha, Complex beta) {
  if (alpha == 0.0) throw DegenerateStateError("alpha = 0: the zero solution has no theta_s");
  if (lambda == 0.0) throw DomainError("lambda must be nonzero");
  const Complex l2 = lambda * lambda;
  return kSqrt2 / (lambda * alpha) * ((-l2 + omega / 2.0) * alpha - (omega / 2.0) * beta);
}

std::array<Complex, 4> theta_s_all_forms(Complex lambda, Complex omega, Complex alpha,
                                         Complex beta) {
  if (lambda == 0.0) throw DomainError("lambda must be nonzero");
  if (std::abs(alpha) < kSingularTolerance) {
    throw BranchDegenerateError(1, "form 1 (f+^L): alpha vanishes");
  }
  if (std::abs(beta) < kSingularTolerance) {
    throw BranchDegenerateError(4, "form 4 (f-^R): beta vanishes");
  }
  const Complex d2 = (omega - 1.0) * alpha - omega * beta;
  if (std::abs(d2) < kSingularTolerance) {
    throw BranchDegenerateError(2, "form 2 (f+^R): (omega-1) alpha - omega beta vanishes");
  }
  const Complex d3 = omega * alpha + (omega - 1.0) * beta;
  if (std::abs(d3) < kSingularTolerance) {
    throw BranchDegenerateError(3, "form 3 (f-^L): omega alpha + (omega-1) beta vanishes");
  }

  const Complex l2 = lambda * lambda;
  return {
      theta_s_form1(lambda, omega, alpha, beta),
      omega * (alpha - beta) / (kSqrt2 * lambda * d2),
      omega * (alpha + beta) / (kSqrt2 * lambda * d3),
      kSqrt2 / (lambda * beta) * ((omega / 2.0) * alpha + (omega / 2.0 - l2) * beta),
  };
}

ThetaSquared theta_s_squared(double phi, Branch branch) {
  require_open_unit_phase(phi);
  const Complex w = unit_phase(phi);
  const auto [c, sn] = cos_sin_2pi(phi);
  const double s = branch_sign(branch);

  const Complex denom = w * w - 3.0 * w + 1.0 - s * kI * (w * w - 1.0);
  require_nonsingular(denom, "omega^2 - 3 omega + 1 -+ i (omega^2 - 1)", phi);
  const double real_denom = 3.0 - 2.0 * c - 2.0 * s * sn;
  require_nonsingular(real_denom, "3 - 2 cos(2 pi phi) -+ 2 sin(2 pi phi)", phi);
  return {w / denom, 1.0 / real_denom};
}

double gamma_factor(double phi, Branch branch) {
  require_open_unit_phase(phi);
  const auto [c, s] = cos_sin_2pi(phi);
  return 2.0 - c - branch_sign(branch) * s;
}

StationarySolution build_solution(double phi, Branch branch, Complex alpha) {
  require_open_unit_phase(phi);
  StationarySolution sol;
  sol.phase = phi;
  sol.branch = branch;
  sol.alpha = alpha;
  sol.beta = branch_sign(branch) * kI * alpha;
  sol.lambda_sq = lambda_squared(phi, branch);
  sol.lambda = select_lambda(sol.lambda_sq);

  // theta_s is homogeneous of degree zero in (alpha, beta); evaluate it on the
  // unit representative so the zero solution still carries its branch data.
  const Complex w = unit_phase(phi);
  sol.theta_s = theta_s_form1(sol.lambda, w, 1.0, branch_sign(branch) * kI);
  sol.theta_l = -1.0 / sol.theta_s;

  sol.theta_s_abs_sq = theta_s_squared(phi, branch).abs_sq;
  sol.gamma = gamma_factor(phi, branch);

  const double modulus = std::sqrt(sol.theta_s_abs_sq);
  if (std::abs(modulus - 1.0) <= kMarginalTolerance) {
    sol.decay_class = DecayClass::Marginal;
  } else {
    sol.decay_class = modulus < 1.0 ? DecayClass::Decaying : DecayClass::Growing;
  }
  return sol;
}

Amplitude stationary_amplitude(const StationarySolution& sol, int x) {
  const Complex w = sol.omega();
  const Complex a = sol.alpha;
  const Complex b = sol.beta;
  if (x == 0) return {a, b};
  const auto n = static_cast<unsigned>(std::abs(x));
  if (x > 0) {
    const Complex scale = int_power(-sol.theta_s, n);
    return scale * Amplitude{a, (1.0 - w) * a + w * b};
  }
  const Complex scale = int_power(sol.theta_s, n);
  return scale * Amplitude{(w - 1.0) * b + w * a, b};
}

double stationary_measure(const StationarySolution& sol, int x) {
  const double origin = 2.0 * std::norm(sol.alpha);
  if (x == 0) return origin;
  return origin * std::pow(sol.theta_s_abs_sq, std::abs(x)) * sol.gamma;
}

Measure stationary_measure_table(const StationarySolution& sol, int half_width) {
  if (half_width < 0) throw DomainError("half-width must be >= 0");
  Measure m{half_width, {}};
  m.values.reserve(2 * static_cast<std::size_t>(half_width) + 1);
  for (int x = -half_width; x <= half_width; ++x) m.values.push_back(stationary_measure(sol, x));
  return m;
}

DoubleAngle corollary_trig(double phi, Branch branch) {
  require_open_unit_phase(phi);
  const auto [c, s] = cos_sin_2pi(phi);
  const double denom = 5.0 - 12.0 * c + 8.0 * c * c;
  require_nonsingular(denom, "5 - 12 C + 8 C^2", phi);

  const double c2 = c * c;
  const double c3 = c2 * c;
  const double s3 = s * s * s;
  const double cs = c * s;
  if (branch == Branch::PlusI) {
    return {(-2.0 + 6.0 * c + 6.0 * s - 6.0 * cs - 8.0 * c2 + 4.0 * c3 - 4.0 * s3) / denom,
            (1.0 - 4.0 * c + 8.0 * s - 8.0 * cs + 6.0 * c2 - 4.0 * c3 - 4.0 * s3) / denom};
  }
  return {(-2.0 + 6.0 * c - 6.0 * s + 6.0 * cs - 8.0 * c2 + 4.0 * c3 + 4.0 * s3) / denom,
          (-1.0 + 4.0 * c + 8.0 * s - 8.0 * cs - 6.0 * c2 + 4.0 * c3 - 4.0 * s3) / denom};
}

std::vector<double> phase_grid(int points) {
  if (points < 1) throw DomainError("grid needs at least one point");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) grid.push_back((k + 0.25) / points);
  return grid;
}

}  // namespace qwalk::wojcik
