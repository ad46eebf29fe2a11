#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <string>
#include <system_error>

#include "qwalk/cli.hpp"
#include "qwalk/errors.hpp"

namespace qwalk::cli {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc{}) throw std::runtime_error("format_double: to_chars failed");
  return std::string(buf, res.ptr);
}

Json complex_to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) {
  return {j.at("re").get<double>(), j.at("im").get<double>()};
}

Json solution_to_json(const wojcik::StationarySolution& sol, int table_half_width) {
  Json j;
  j["phi"] = sol.phase;
  j["branch"] = std::string(wojcik::to_string(sol.branch));
  j["alpha"] = complex_to_json(sol.alpha);
  j["beta"] = complex_to_json(sol.beta);
  j["lambda_sq"] = complex_to_json(sol.lambda_sq);
  j["lambda"] = complex_to_json(sol.lambda);
  j["theta_s"] = complex_to_json(sol.theta_s);
  j["theta_l"] = complex_to_json(sol.theta_l);
  j["theta_s_abs_sq"] = sol.theta_s_abs_sq;
  j["gamma"] = sol.gamma;
  j["decay_class"] = std::string(wojcik::to_string(sol.decay_class));
  Json table = Json::array();
  for (int x = -table_half_width; x <= table_half_width; ++x) {
    table.push_back(Json{{"x", x}, {"mu", wojcik::stationary_measure(sol, x)}});
  }
  j["measure"] = std::move(table);
  return j;
}

wojcik::StationarySolution solution_from_json(const Json& j) {
  wojcik::StationarySolution sol;
  sol.phase = j.at("phi").get<double>();
  const auto branch = wojcik::parse_branch(j.at("branch").get<std::string>());
  if (!branch) throw DomainError("unknown branch in solution record");
  sol.branch = *branch;
  sol.alpha = complex_from_json(j.at("alpha"));
  sol.beta = complex_from_json(j.at("beta"));
  sol.lambda_sq = complex_from_json(j.at("lambda_sq"));
  sol.lambda = complex_from_json(j.at("lambda"));
  sol.theta_s = complex_from_json(j.at("theta_s"));
  sol.theta_l = complex_from_json(j.at("theta_l"));
  sol.theta_s_abs_sq = j.at("theta_s_abs_sq").get<double>();
  sol.gamma = j.at("gamma").get<double>();
  const auto decay = wojcik::parse_decay_class(j.at("decay_class").get<std::string>());
  if (!decay) throw DomainError("unknown decay_class in solution record");
  sol.decay_class = *decay;
  return sol;
}

Json report_to_json(const VerificationReport& report) {
  Json records = Json::array();
  for (const auto& r : report.records) {
    Json j;
    j["phi"] = r.phi;
    j["branch"] = std::string(wojcik::to_string(r.branch));
    j["lambda_sq"] = complex_to_json(r.lambda_sq);
    j["theta_s"] = complex_to_json(r.theta_s);
    j["decay_class"] = std::string(wojcik::to_string(r.decay_class));
    j["residual_stationarity"] = r.residual_stationarity;
    j["stationarity_half_width"] = r.stationarity_half_width;
    if (r.residual_lemma1) {
      j["residual_lemma1"] = *r.residual_lemma1;
    } else {
      j["residual_lemma1"] = "NOT-APPLICABLE";
    }
    j["lemma1_terms"] = r.lemma1_terms;
    j["residual_theta_forms"] = r.residual_theta_forms;
    j["residual_det_root"] = r.residual_det_root;
    j["residual_corollary3"] = r.residual_corollary3;
    j["pass"] = r.pass;
    records.push_back(std::move(j));
  }
  Json out;
  out["tolerance"] = report.tolerance;
  out["pass"] = report.pass();
  out["records"] = std::move(records);
  return out;
}

std::string report_to_csv(const VerificationReport& report) {
  std::ostringstream os;
  os << "phi,branch,lambda_sq_re,lambda_sq_im,theta_s_re,theta_s_im,decay_class,"
        "residual_stationarity,residual_lemma1,lemma1_terms,residual_theta_forms,"
        "residual_det_root,residual_corollary3,pass\n";
  for (const auto& r : report.records) {
    os << format_double(r.phi) << ',' << wojcik::to_string(r.branch) << ','
       << format_double(r.lambda_sq.real()) << ',' << format_double(r.lambda_sq.imag()) << ','
       << format_double(r.theta_s.real()) << ',' << format_double(r.theta_s.imag()) << ','
       << wojcik::to_string(r.decay_class) << ',' << format_double(r.residual_stationarity) << ','
       << (r.residual_lemma1 ? format_double(*r.residual_lemma1) : std::string("NOT-APPLICABLE"))
       << ',' << r.lemma1_terms << ',' << format_double(r.residual_theta_forms) << ','
       << format_double(r.residual_det_root) << ',' << format_double(r.residual_corollary3) << ','
       << (r.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

WalkState state_from_json(const Json& j, int half_width) {
  WalkState state(half_width, j.value("time", 0L));
  for (const auto& s : j.at("sites")) {
    state.set(s.at("x").get<int>(),
              {complex_from_json(s.at("left")), complex_from_json(s.at("right"))});
  }
  return state;
}

Json state_to_json(const WalkState& state) {
  Json sites = Json::array();
  for (int x = -state.half_width(); x <= state.half_width(); ++x) {
    const Amplitude a = state.at(x);
    if (a.left == 0.0 && a.right == 0.0) continue;
    sites.push_back(
        Json{{"x", x}, {"left", complex_to_json(a.left)}, {"right", complex_to_json(a.right)}});
  }
  Json j;
  j["time"] = state.time();
  j["half_width"] = state.half_width();
  j["sites"] = std::move(sites);
  return j;
}

}  // namespace qwalk::cli
