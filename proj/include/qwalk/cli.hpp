#pragma once

// Command-line front end: evolve, stationary, verify, sweep.
//
// Exit codes: 0 success, 1 verification failure, 2 config/domain error,
// 3 boundary leak, 4 singular parameter.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qwalk/core.hpp"
#include "qwalk/wojcik.hpp"

namespace qwalk::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitConfig = 2,
  kExitBoundaryLeak = 3,
  kExitSingular = 4,
};

enum class Command { Evolve, Stationary, Verify, Sweep };
enum class BranchSelection { PlusI, MinusI, Both };
enum class Format { Csv, Json };

struct RunConfig {
  Command command = Command::Stationary;
  double phi = 0.25;
  std::optional<BranchSelection> branch;
  double alpha_re = wojcik::kDefaultAlpha;
  double alpha_im = 0.0;
  int lattice_half_width = 128;
  long steps = 100;
  std::optional<long> horizon;
  std::optional<int> grid_points;
  double tolerance = 1e-10;
  std::string output_path;
  std::optional<Format> format;
  std::string input_path;

  Complex alpha() const { return {alpha_re, alpha_im}; }
  // Command-specific defaults applied.
  BranchSelection branch_or_default() const;
  Format format_or_default() const;
  std::vector<wojcik::Branch> branches() const;
  std::vector<double> phases() const;

  // Throws DomainError on an invalid combination.
  void validate() const;
};

inline constexpr int kStationarityHalfWidth = 200;
inline constexpr int kStationarityMargin = 2;
inline constexpr int kUnitCirclePoints = 8;
inline constexpr double kPoleExclusion = 1e-3;
inline constexpr int kMaxLemma1Terms = 200000;

struct VerificationRecord {
  double phi = 0.0;
  wojcik::Branch branch = wojcik::Branch::PlusI;
  Complex lambda_sq;
  Complex theta_s;
  wojcik::DecayClass decay_class = wojcik::DecayClass::Marginal;
  double residual_stationarity = 0.0;
  int stationarity_half_width = 0;
  std::optional<double> residual_lemma1;  // nullopt: NOT-APPLICABLE
  int lemma1_terms = 0;
  double residual_theta_forms = 0.0;
  double residual_det_root = 0.0;
  double residual_corollary3 = 0.0;
  bool pass = false;
};

struct VerificationReport {
  double tolerance = 0.0;
  std::vector<VerificationRecord> records;

  bool pass() const;
};

// Runs every residual check for one (phi, branch) and grades it against `tolerance`.
VerificationRecord verify_point(double phi, wojcik::Branch branch, Complex alpha, double tolerance);
VerificationReport run_verification(const RunConfig& cfg);

// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json solution_to_json(const wojcik::StationarySolution& sol, int table_half_width);
wojcik::StationarySolution solution_from_json(const Json& j);

Json report_to_json(const VerificationReport& report);
std::string report_to_csv(const VerificationReport& report);

// State file: {"time": n, "half_width": L, "sites": [{"x", "left": {re, im}, "right": {re, im}}]}.
// Reading places the listed sites on [-half_width, half_width]; sites outside throw DomainError.
WalkState state_from_json(const Json& j, int half_width);
Json state_to_json(const WalkState& state);

// Each writes its artifact to cfg.output_path (or `out` when empty) and returns an exit code.
int cmd_evolve(const RunConfig& cfg, std::ostream& out);
int cmd_stationary(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, std::ostream& out);

// Full entry point: parses argv, dispatches, maps exceptions to exit codes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qwalk::cli
