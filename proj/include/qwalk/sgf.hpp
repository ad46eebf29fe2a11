#pragma once

// Numerical checks of the split generating-function machinery.
//
//   f+^j(z) = sum_{x>=1} psi^j(x) z^x,   f-^j(z) = sum_{x<=-1} psi^j(x) z^x
//
// satisfy A f+- = a+- with
//
//   A  = [[lambda - 1/(sqrt2 z), -1/(sqrt2 z)], [-z/sqrt2, lambda + z/sqrt2]]
//   a+ = [-lambda alpha, omega z (alpha - beta)/sqrt2]
//   a- = [omega (alpha + beta)/(sqrt2 z), -lambda beta]
//
// det A = lambda/(sqrt2 z) * (z^2 - sqrt2 (1/lambda - lambda) z - 1), whose roots
// theta_s, theta_l satisfy theta_s theta_l = -1.

#include <array>

#include "qwalk/core.hpp"
#include "qwalk/wojcik.hpp"

namespace qwalk::sgf {

using Vector2 = std::array<Complex, 2>;

struct GenFunSystem {
  Complex z;
  Complex lambda;
  Matrix2 a_matrix;
  Vector2 rhs_plus;
  Vector2 rhs_minus;
};

GenFunSystem build_system(Complex z, Complex lambda, Complex omega, Complex alpha, Complex beta);

struct RootPair {
  Complex theta_s;  // smaller modulus
  Complex theta_l;
};

// Roots of z^2 - sqrt2 (1/lambda - lambda) z - 1, ordered by modulus then by
// principal argument.
RootPair det_A_roots(Complex lambda);

enum class Side { Plus, Minus };
enum class Chirality { Left, Right };

// Margin by which the series ratio must stay inside the unit disc.
inline constexpr double kConvergenceMargin = 1e-6;
inline constexpr int kDefaultTerms = 400;

// Partial sum over the first `terms` sites of one side. terms = 0 gives 0.
// Throws DivergentSeriesError if |theta_s z| (Plus) or |theta_s / z| (Minus)
// is not below 1 - kConvergenceMargin.
Complex truncated_series(const wojcik::StationarySolution& sol, Side side, Chirality chirality,
                         Complex z, int terms);

struct Lemma1Residual {
  double plus = 0.0;
  double minus = 0.0;
  // Rigorous tail bounds: |A| * |tail of the series beyond `terms`|.
  double bound_plus = 0.0;
  double bound_minus = 0.0;
  // C with max(plus, minus) <= C |theta_s|^terms (up to rounding).
  double constant = 0.0;
};

// Max-norm of A f+- - a+- using `terms`-term series for f+-.
Lemma1Residual lemma1_residual(const wojcik::StationarySolution& sol, Complex z, int terms);

}  // namespace qwalk::sgf
