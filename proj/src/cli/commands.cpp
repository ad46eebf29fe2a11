#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qwalk/cli.hpp"
#include "qwalk/errors.hpp"

namespace qwalk::cli {

namespace {

using wojcik::Branch;

constexpr Complex kI{0.0, 1.0};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_artifact(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output_path, std::ios::binary | std::ios::trunc);
  if (!f) throw DomainError("cannot open output file " + cfg.output_path);
  f << text;
  if (!f) throw DomainError("failed writing output file " + cfg.output_path);
}

int support_radius(const WalkState& s) {
  int radius = 0;
  for (int x = -s.half_width(); x <= s.half_width(); ++x) {
    if (s.at(x).weight() > 0.0) radius = std::max(radius, std::abs(x));
  }
  return radius;
}

WalkState initial_state(const RunConfig& cfg) {
  if (!cfg.input_path.empty()) {
    std::ifstream f(cfg.input_path);
    if (!f) throw DomainError("cannot open input state file " + cfg.input_path);
    return state_from_json(Json::parse(f), cfg.lattice_half_width);
  }
  const Complex alpha = cfg.alpha();
  const Complex beta = wojcik::branch_sign(cfg.branches().front()) * kI * alpha;
  const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
  return WalkState::localized(cfg.lattice_half_width, {alpha / norm, beta / norm});
}

}  // namespace

BranchSelection RunConfig::branch_or_default() const {
  if (branch) return *branch;
  return command == Command::Evolve ? BranchSelection::PlusI : BranchSelection::Both;
}

Format RunConfig::format_or_default() const {
  if (format) return *format;
  return (command == Command::Evolve || command == Command::Sweep) ? Format::Csv : Format::Json;
}

std::vector<Branch> RunConfig::branches() const {
  switch (branch_or_default()) {
    case BranchSelection::PlusI:
      return {Branch::PlusI};
    case BranchSelection::MinusI:
      return {Branch::MinusI};
    case BranchSelection::Both:
      break;
  }
  return {Branch::PlusI, Branch::MinusI};
}

std::vector<double> RunConfig::phases() const {
  if (command == Command::Sweep) return wojcik::phase_grid(grid_points.value_or(97));
  if (command == Command::Verify && grid_points) return wojcik::phase_grid(*grid_points);
  return {phi};
}

void RunConfig::validate() const {
  require_open_unit_phase(phi);
  if (lattice_half_width < 1) throw DomainError("--half-width must be >= 1");
  if (steps < 0) throw DomainError("--steps must be >= 0");
  if (horizon && *horizon < 1) throw DomainError("--horizon must be >= 1");
  if (grid_points && *grid_points < 1) throw DomainError("--grid must be >= 1");
  if (command == Command::Sweep && grid_points && *grid_points < 2) {
    throw DomainError("sweep needs --grid >= 2");
  }
  if (!(tolerance > 0.0)) throw DomainError("--tolerance must be > 0");
  if (!std::isfinite(alpha_re) || !std::isfinite(alpha_im)) {
    throw DomainError("alpha must be finite");
  }
  if (command == Command::Evolve) {
    if (branch_or_default() == BranchSelection::Both) {
      throw DomainError("evolve needs a single --branch (plus-i or minus-i) for the initial coin state");
    }
    if (input_path.empty() && alpha() == 0.0) {
      throw DomainError("evolve: the initial coin state [alpha, beta] is zero");
    }
  }
  if (command == Command::Verify && alpha() == 0.0) {
    throw DomainError("verify: alpha must be nonzero (the zero solution has no theta_s)");
  }
}

int cmd_evolve(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const auto field = CoinField::wojcik(cfg.phi);
  const WalkState init = initial_state(cfg);

  // Speed one site per step: the light cone must stay inside the lattice.
  const long reach = std::max(cfg.steps, cfg.horizon ? *cfg.horizon - 1 : 0L) + support_radius(init);
  if (cfg.lattice_half_width < reach) {
    throw BoundaryLeakError("half-width " + std::to_string(cfg.lattice_half_width) +
                            " is inside the light cone (needs >= " + std::to_string(reach) + ")");
  }

  const WalkState final_state = evolve(init, field, cfg.steps);
  if (final_state.boundary_leak()) {
    throw BoundaryLeakError("weight reached the lattice edge; increase --half-width");
  }
  const Measure mu = measure(final_state);
  std::optional<Measure> avg;
  if (cfg.horizon) avg = time_averaged_measure(init, field, *cfg.horizon);

  const int L = cfg.lattice_half_width;
  if (cfg.format_or_default() == Format::Csv) {
    std::ostringstream os;
    os << (avg ? "x,mu,mu_avg\n" : "x,mu\n");
    for (int x = -L; x <= L; ++x) {
      os << x << ',' << format_double(mu.at(x));
      if (avg) os << ',' << format_double(avg->at(x));
      os << '\n';
    }
    write_artifact(cfg, os.str(), out);
    return kExitOk;
  }

  Json j;
  j["phi"] = cfg.phi;
  j["branch"] = std::string(wojcik::to_string(cfg.branches().front()));
  j["steps"] = cfg.steps;
  if (cfg.horizon) j["horizon"] = *cfg.horizon;
  j["time"] = final_state.time();
  j["half_width"] = L;
  j["total_norm"] = total_norm(final_state);
  Json rows = Json::array();
  for (int x = -L; x <= L; ++x) {
    Json row{{"x", x}, {"mu", mu.at(x)}};
    if (avg) row["mu_avg"] = avg->at(x);
    rows.push_back(std::move(row));
  }
  j["measure"] = std::move(rows);
  write_artifact(cfg, dump(j), out);
  return kExitOk;
}

int cmd_stationary(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  std::vector<wojcik::StationarySolution> sols;
  for (auto b : cfg.branches()) sols.push_back(wojcik::build_solution(cfg.phi, b, cfg.alpha()));

  const int L = cfg.lattice_half_width;
  if (cfg.format_or_default() == Format::Json) {
    Json arr = Json::array();
    for (const auto& s : sols) arr.push_back(solution_to_json(s, L));
    write_artifact(cfg, dump(Json{{"solutions", std::move(arr)}}), out);
    return kExitOk;
  }

  std::ostringstream os;
  os << "phi,branch,lambda_sq_re,lambda_sq_im,theta_s_re,theta_s_im,theta_s_abs_sq,gamma,"
        "decay_class,x,mu\n";
  for (const auto& s : sols) {
    const std::string prefix =
        format_double(s.phase) + ',' + std::string(wojcik::to_string(s.branch)) + ',' +
        format_double(s.lambda_sq.real()) + ',' + format_double(s.lambda_sq.imag()) + ',' +
        format_double(s.theta_s.real()) + ',' + format_double(s.theta_s.imag()) + ',' +
        format_double(s.theta_s_abs_sq) + ',' + format_double(s.gamma) + ',' +
        std::string(wojcik::to_string(s.decay_class));
    for (int x = -L; x <= L; ++x) {
      os << prefix << ',' << x << ',' << format_double(wojcik::stationary_measure(s, x)) << '\n';
    }
  }
  write_artifact(cfg, os.str(), out);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const VerificationReport report = run_verification(cfg);
  write_artifact(cfg,
                 cfg.format_or_default() == Format::Json ? dump(report_to_json(report))
                                                         : report_to_csv(report),
                 out);
  return report.pass() ? kExitOk : kExitVerifyFailed;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  struct Row {
    double phi;
    Branch branch;
    double abs_sq;
    double gamma;
    wojcik::DoubleAngle trig;
    wojcik::DecayClass decay;
  };
  std::vector<Row> rows;
  for (double phi : cfg.phases()) {
    for (auto b : cfg.branches()) {
      const auto sol = wojcik::build_solution(phi, b, cfg.alpha());
      rows.push_back({phi, b, sol.theta_s_abs_sq, sol.gamma, wojcik::corollary_trig(phi, b),
                      sol.decay_class});
    }
  }

  if (cfg.format_or_default() == Format::Csv) {
    std::ostringstream os;
    os << "phi,branch,theta_s_abs_sq,gamma,cos2xi,sin2xi,decay_class\n";
    for (const auto& r : rows) {
      os << format_double(r.phi) << ',' << wojcik::to_string(r.branch) << ','
         << format_double(r.abs_sq) << ',' << format_double(r.gamma) << ','
         << format_double(r.trig.cos2xi) << ',' << format_double(r.trig.sin2xi) << ','
         << wojcik::to_string(r.decay) << '\n';
    }
    write_artifact(cfg, os.str(), out);
    return kExitOk;
  }

  Json arr = Json::array();
  for (const auto& r : rows) {
    arr.push_back(Json{{"phi", r.phi},
                       {"branch", std::string(wojcik::to_string(r.branch))},
                       {"theta_s_abs_sq", r.abs_sq},
                       {"gamma", r.gamma},
                       {"cos2xi", r.trig.cos2xi},
                       {"sin2xi", r.trig.sin2xi},
                       {"decay_class", std::string(wojcik::to_string(r.decay))}});
  }
  write_artifact(cfg, dump(Json{{"rows", std::move(arr)}}), out);
  return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qwalk: one-defect quantum walk simulator and closed-form verifier"};
  app.name("qwalk");
  app.require_subcommand(1);

  RunConfig cfg;
  std::string branch_text;
  std::string format_text;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--phi", cfg.phi, "defect phase phi in (0,1)");
    sub->add_option("--branch", branch_text, "plus-i | minus-i | both")
        ->check(CLI::IsMember({"plus-i", "minus-i", "both"}));
    sub->add_option("--alpha-re", cfg.alpha_re, "Re alpha (origin left amplitude)");
    sub->add_option("--alpha-im", cfg.alpha_im, "Im alpha");
    sub->add_option("--half-width", cfg.lattice_half_width, "lattice half-width L");
    sub->add_option("--steps", cfg.steps, "number of evolution steps");
    sub->add_option("--horizon", cfg.horizon, "time-average horizon T");
    sub->add_option("--grid", cfg.grid_points, "number of phi grid points");
    sub->add_option("--tolerance", cfg.tolerance, "residual tolerance");
    sub->add_option("--output", cfg.output_path, "output file (stdout if omitted)");
    sub->add_option("--format", format_text, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* evolve_cmd = app.add_subcommand("evolve", "evolve an origin-localized state and write measures");
  add_common(evolve_cmd);
  evolve_cmd->add_option("--input", cfg.input_path, "initial state JSON file");
  auto* stationary_cmd = app.add_subcommand("stationary", "closed-form stationary solutions");
  add_common(stationary_cmd);
  auto* verify_cmd = app.add_subcommand("verify", "residual checks of every closed form");
  add_common(verify_cmd);
  auto* sweep_cmd = app.add_subcommand("sweep", "tabulate |theta_s|^2, Gamma, cos 2xi, sin 2xi over phi");
  add_common(sweep_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfig;
  }

  if (!branch_text.empty()) {
    cfg.branch = branch_text == "plus-i"    ? BranchSelection::PlusI
                 : branch_text == "minus-i" ? BranchSelection::MinusI
                                            : BranchSelection::Both;
  }
  if (!format_text.empty()) cfg.format = format_text == "csv" ? Format::Csv : Format::Json;

  try {
    if (evolve_cmd->parsed()) {
      cfg.command = Command::Evolve;
      return cmd_evolve(cfg, out);
    }
    if (stationary_cmd->parsed()) {
      cfg.command = Command::Stationary;
      return cmd_stationary(cfg, out);
    }
    if (verify_cmd->parsed()) {
      cfg.command = Command::Verify;
      return cmd_verify(cfg, out);
    }
    cfg.command = Command::Sweep;
    return cmd_sweep(cfg, out);
  } catch (const BoundaryLeakError& e) {
    err << "boundary leak: " << e.what() << "\n";
    return kExitBoundaryLeak;
  } catch (const SingularParameterError& e) {
    err << e.what() << "\n";
    return kExitSingular;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed input file: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace qwalk::cli
