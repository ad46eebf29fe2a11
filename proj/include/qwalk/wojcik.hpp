#pragma once

// Closed-form stationary eigenstates of the one-phase-defect Hadamard walk.
//
// With omega = exp(2*pi*i*phi) at the origin and alpha = psi^L(0), beta = psi^R(0),
// eigenvectors exist only on the two branches beta = +i alpha and beta = -i alpha.
// On each branch lambda^2, theta_s^2 and the stationary measure are explicit
// functions of phi:
//
//   psi(x) = (-theta_s)^x [alpha, (1-omega) alpha + omega beta]      x >= 1
//   psi(0) = [alpha, beta]
//   psi(x) = theta_s^|x| [(omega-1) beta + omega alpha, beta]         x <= -1
//
//   mu(x)  = 2 |alpha|^2 |theta_s|^(2|x|) * (x != 0 ? Gamma(phi) : 1)
//
// Only lambda^2 is determined; lambda is the principal root. The other root
// -lambda belongs to the eigenvector (-1)^x psi(x), which has the same measure.

#include <array>
#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

#include "qwalk/core.hpp"
#include "qwalk/phase.hpp"

namespace qwalk::wojcik {

enum class Branch { PlusI, MinusI };

inline constexpr std::array<Branch, 2> kBranches{Branch::PlusI, Branch::MinusI};

// +1 for beta = i alpha, -1 for beta = -i alpha.
constexpr double branch_sign(Branch b) { return b == Branch::PlusI ? 1.0 : -1.0; }
std::string_view to_string(Branch b);
std::optional<Branch> parse_branch(std::string_view s);

enum class DecayClass { Decaying, Marginal, Growing };

std::string_view to_string(DecayClass c);
std::optional<DecayClass> parse_decay_class(std::string_view s);

// Band around |theta_s| = 1 classified as MARGINAL.
inline constexpr double kMarginalTolerance = 1e-12;
// Denominators below this magnitude are treated as singular.
inline constexpr double kSingularTolerance = 1e-14;

inline constexpr double kDefaultAlpha = 1.0 / std::numbers::sqrt2;

struct StationarySolution {
  double phase = 0.0;
  Branch branch = Branch::PlusI;
  Complex alpha;
  Complex beta;
  Complex lambda_sq;
  Complex lambda;
  Complex theta_s;
  Complex theta_l;
  double gamma = 0.0;
  double theta_s_abs_sq = 0.0;
  DecayClass decay_class = DecayClass::Marginal;

  Complex omega() const { return unit_phase(phase); }
  friend bool operator==(const StationarySolution&, const StationarySolution&) = default;
};

Complex lambda_squared(double phi, Branch branch);

// Principal square root of a unit-modulus lambda^2; arg(result) in (-pi/2, pi/2].
Complex select_lambda(Complex lambda_sq);

// theta_s = sqrt(2)/(lambda alpha) * ((-lambda^2 + omega/2) alpha - (omega/2) beta)
Complex theta_s_form1(Complex lambda, Complex omega, Complex alpha, Complex beta);

// The four expressions for theta_s obtained from the four generating functions
// f+^L, f+^R, f-^L, f-^R. They coincide exactly on a valid branch.
std::array<Complex, 4> theta_s_all_forms(Complex lambda, Complex omega, Complex alpha, Complex beta);

struct ThetaSquared {
  Complex value;  // omega / (omega^2 - 3 omega + 1 -+ i (omega^2 - 1))
  double abs_sq;  // 1 / (3 - 2 cos(2 pi phi) -+ 2 sin(2 pi phi))
};

ThetaSquared theta_s_squared(double phi, Branch branch);

// Gamma(phi) = 2 - cos(2 pi phi) -+ sin(2 pi phi).
double gamma_factor(double phi, Branch branch);

StationarySolution build_solution(double phi, Branch branch, Complex alpha = kDefaultAlpha);

Amplitude stationary_amplitude(const StationarySolution& sol, int x);
double stationary_measure(const StationarySolution& sol, int x);
// mu(x) for x in [-half_width, half_width].
Measure stationary_measure_table(const StationarySolution& sol, int half_width);

struct DoubleAngle {
  double cos2xi;
  double sin2xi;
};

// (cos 2xi, sin 2xi) of lambda^2 = exp(2 i xi) as rational functions of C = cos 2 pi phi,
// S = sin 2 pi phi.
DoubleAngle corollary_trig(double phi, Branch branch);

// Uniform open-interval grid phi_k = (k + 1/4) / points, k = 0..points-1.
std::vector<double> phase_grid(int points);

// z^n by repeated squaring.
Complex int_power(Complex z, unsigned n);

}  // namespace qwalk::wojcik
