#include <algorithm>
#include <cmath>
#include <numbers>

#include "qwalk/cli.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/sgf.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk::cli {

namespace {

using wojcik::DecayClass;

double theta_forms_residual(const wojcik::StationarySolution& sol) {
  const auto forms = wojcik::theta_s_all_forms(sol.lambda, sol.omega(), sol.alpha, sol.beta);
  double spread = 0.0;
  for (const Complex& f : forms) spread = std::max(spread, std::abs(f - sol.theta_s));
  return spread;
}

double det_root_residual(const wojcik::StationarySolution& sol) {
  const auto roots = sgf::det_A_roots(sol.lambda);
  const double nearest =
      std::min(std::abs(sol.theta_s - roots.theta_s), std::abs(sol.theta_s - roots.theta_l));
  const Complex t = sol.theta_s;
  const Complex quadratic =
      t * t - std::numbers::sqrt2 * (1.0 / sol.lambda - sol.lambda) * t - 1.0;
  return std::max({nearest, std::abs(quadratic), std::abs(sol.theta_s * sol.theta_l + 1.0)});
}

double corollary_residual(const wojcik::StationarySolution& sol) {
  const auto [c, s] = wojcik::corollary_trig(sol.phase, sol.branch);
  return std::max({std::abs(c - sol.lambda_sq.real()), std::abs(s - sol.lambda_sq.imag()),
                   std::abs(c * c + s * s - 1.0)});
}

// At least the default 400 terms; more when |theta_s| is close enough to 1 that
// the series tail at 400 terms still exceeds a tenth of the tolerance.
int lemma1_terms_for(const wojcik::StationarySolution& sol, Complex z, double tolerance) {
  const double constant = sgf::lemma1_residual(sol, z, 0).constant;
  const double modulus = std::sqrt(sol.theta_s_abs_sq);
  if (constant <= 0.0 || modulus <= 0.0) return sgf::kDefaultTerms;
  // Below ~1e-17 the tail is under double rounding of the partial sums anyway.
  const double target = std::max(tolerance, 1e-16) / 10.0;
  const double needed = std::ceil(std::log(target / constant) / std::log(modulus));
  if (!(needed > sgf::kDefaultTerms)) return sgf::kDefaultTerms;
  return needed > kMaxLemma1Terms ? kMaxLemma1Terms : static_cast<int>(needed);
}

}  // namespace

VerificationRecord verify_point(double phi, wojcik::Branch branch, Complex alpha,
                                double tolerance) {
  const auto sol = wojcik::build_solution(phi, branch, alpha);
  const auto field = CoinField::wojcik(phi);

  VerificationRecord rec;
  rec.phi = phi;
  rec.branch = branch;
  rec.lambda_sq = sol.lambda_sq;
  rec.theta_s = sol.theta_s;
  rec.decay_class = sol.decay_class;

  rec.stationarity_half_width =
      static_cast<int>(std::min<long>(kStationarityHalfWidth, spectral::overflow_cap(sol)));
  rec.residual_stationarity = spectral::stationarity_residual(
      sol, field, rec.stationarity_half_width, kStationarityMargin);

  if (sol.decay_class == DecayClass::Decaying) {
    double worst = 0.0;
    int terms_used = 0;
    for (int k = 0; k < kUnitCirclePoints; ++k) {
      const Complex z = std::polar(1.0, k * std::numbers::pi / 4.0);
      if (std::abs(1.0 + sol.theta_s * z) < kPoleExclusion) continue;
      const int terms = lemma1_terms_for(sol, z, tolerance);
      const auto res = sgf::lemma1_residual(sol, z, terms);
      worst = std::max({worst, res.plus, res.minus});
      terms_used = std::max(terms_used, terms);
    }
    rec.residual_lemma1 = worst;
    rec.lemma1_terms = terms_used;
  }

  rec.residual_theta_forms = theta_forms_residual(sol);
  rec.residual_det_root = det_root_residual(sol);
  rec.residual_corollary3 = corollary_residual(sol);

  rec.pass = rec.residual_stationarity <= tolerance && rec.residual_theta_forms <= tolerance &&
             rec.residual_det_root <= tolerance && rec.residual_corollary3 <= tolerance &&
             (!rec.residual_lemma1 || *rec.residual_lemma1 <= tolerance);
  return rec;
}

bool VerificationReport::pass() const {
  return std::all_of(records.begin(), records.end(),
                     [](const VerificationRecord& r) { return r.pass; });
}

VerificationReport run_verification(const RunConfig& cfg) {
  VerificationReport report;
  report.tolerance = cfg.tolerance;
  for (double phi : cfg.phases()) {
    for (auto branch : cfg.branches()) {
      report.records.push_back(verify_point(phi, branch, cfg.alpha(), cfg.tolerance));
    }
  }
  return report;
}

}  // namespace qwalk::cli
