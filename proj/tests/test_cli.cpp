#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "qwalk/cli.hpp"
#include "qwalk/errors.hpp"

using namespace qwalk;
using namespace qwalk::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) lines.push_back(line);
  return lines;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream is(line);
  for (std::string cell; std::getline(is, cell, ',');) cells.push_back(cell);
  return cells;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qwalk_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(0.25) == "0.25");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-3e-300) == "-3e-300");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int k = 0; k < 2000; ++k) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    const std::string s = format_double(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == v);
  }
}

TEST_CASE("evolve") {
  SUBCASE("CSV with 2L+1 rows") {
    const auto r = run_cli({"evolve", "--phi", "0.25", "--steps", "100", "--half-width", "128", "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    CHECK(lines.front() == "x,mu");
    CHECK(lines.size() == 258);
    CHECK(split(lines[1])[0] == "-128");
    double total = 0.0;
    for (std::size_t i = 1; i < lines.size(); ++i) total += std::stod(split(lines[i])[1]);
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
  SUBCASE("zero steps returns the initial measure") {
    const auto r = run_cli({"evolve", "--phi", "0.3", "--steps", "0", "--half-width", "4"});
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 10);
    CHECK(std::abs(std::stod(split(lines[5])[1]) - 1.0) <= 1e-15);
    CHECK(lines[4] == "-1,0");
  }
  SUBCASE("half-width below the light cone is a boundary leak") {
    const auto r = run_cli({"evolve", "--phi", "0.25", "--steps", "100", "--half-width", "50"});
    CHECK(r.code == kExitBoundaryLeak);
    CHECK_FALSE(r.err.empty());
  }
  SUBCASE("horizon adds a time-averaged column") {
    const auto r = run_cli({"evolve", "--phi", "0.25", "--steps", "10", "--horizon", "20", "--half-width", "30"});
    REQUIRE(r.code == 0);
    CHECK(lines_of(r.out).front() == "x,mu,mu_avg");
  }
  SUBCASE("JSON output") {
    const auto r = run_cli({"evolve", "--phi", "0.25", "--steps", "5", "--half-width", "8", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j.at("steps") == 5);
    CHECK(j.at("measure").size() == 17);
    CHECK(std::abs(j.at("total_norm").get<double>() - 1.0) <= 1e-14);
  }
  SUBCASE("state file input") {
    WalkState s(6);
    s.set(-1, {Complex(0.6, 0.0), Complex(0.0, 0.0)});
    s.set(2, {Complex(0.0, 0.0), Complex(0.0, 0.8)});
    const auto path = temp_file("state.json");
    { std::ofstream(path) << state_to_json(s).dump(); }
    const auto r = run_cli({"evolve", "--phi", "0.4", "--steps", "0", "--half-width", "6", "--input", path.string()});
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    CHECK(lines[6] == "-1,0.36");
    CHECK(lines[9] == "2,0.6400000000000001");
    std::filesystem::remove(path);
  }
  SUBCASE("both branches cannot seed one evolution") {
    CHECK(run_cli({"evolve", "--branch", "both", "--steps", "3", "--half-width", "8"}).code == kExitConfig);
  }
}

TEST_CASE("stationary") {
  SUBCASE("phi = 1/4 minus branch") {
    const auto r = run_cli({"stationary", "--phi", "0.25", "--branch", "minus-i", "--half-width", "3"});
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    REQUIRE(j.at("solutions").size() == 1);
    const auto& s = j.at("solutions")[0];
    CHECK(s.at("theta_s_abs_sq").get<double>() == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(s.at("decay_class") == "DECAYING");
    CHECK(s.at("measure").size() == 7);
    for (const char* key : {"phi", "branch", "lambda_sq", "theta_s", "theta_s_abs_sq", "gamma", "decay_class"}) {
      CHECK(s.contains(key));
    }
  }
  SUBCASE("both branches") {
    const auto r = run_cli({"stationary", "--phi", "0.3", "--branch", "both", "--half-width", "2"});
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    REQUIRE(j.at("solutions").size() == 2);
    CHECK(j.at("solutions")[0].at("branch") == "plus-i");
    CHECK(j.at("solutions")[1].at("branch") == "minus-i");
  }
  SUBCASE("phi = 0 is a domain error") {
    CHECK(run_cli({"stationary", "--phi", "0"}).code == kExitConfig);
    CHECK(run_cli({"stationary", "--phi", "1.2"}).code == kExitConfig);
  }
  SUBCASE("CSV") {
    const auto r = run_cli({"stationary", "--phi", "0.25", "--branch", "plus-i", "--half-width", "1", "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    CHECK(lines.front() == "phi,branch,lambda_sq_re,lambda_sq_im,theta_s_re,theta_s_im,theta_s_abs_sq,gamma,decay_class,x,mu");
    CHECK(lines.size() == 4);
  }
}

TEST_CASE("solution JSON round-trip is bit-exact") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.001, 0.999);
  for (int k = 0; k < 200; ++k) {
    const auto b = k % 2 ? wojcik::Branch::PlusI : wojcik::Branch::MinusI;
    const auto sol = wojcik::build_solution(u(rng), b, Complex(u(rng), -u(rng)));
    const std::string text = solution_to_json(sol, 3).dump();
    const auto back = solution_from_json(Json::parse(text));
    CHECK(back == sol);
    CHECK(solution_to_json(back, 3).dump() == text);
  }
  CHECK_THROWS_AS(solution_from_json(Json::parse(R"({"phi":0.3,"branch":"sideways"})")), DomainError);
}

TEST_CASE("state JSON round-trip") {
  WalkState s(5, 17);
  s.set(-5, {Complex(0.1, -0.2), Complex(0.3, 0.4)});
  s.set(3, {Complex(1e-300, 0.0), Complex(-0.7, 0.0)});
  const auto back = state_from_json(Json::parse(state_to_json(s).dump()), 5);
  CHECK(back.time() == 17);
  for (int x = -5; x <= 5; ++x) CHECK(back.at(x) == s.at(x));
  CHECK_THROWS_AS(state_from_json(state_to_json(s), 2), DomainError);
}

TEST_CASE("verify") {
  SUBCASE("phi = 1/4 passes on both branches") {
    const auto r = run_cli({"verify", "--phi", "0.25", "--tolerance", "1e-10"});
    CHECK(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j.at("pass") == true);
    REQUIRE(j.at("records").size() == 2);
    // plus-i is marginal at 1/4: no common annulus, so the series check is not applicable.
    CHECK(j.at("records")[0].at("residual_lemma1") == "NOT-APPLICABLE");
    CHECK(j.at("records")[1].at("residual_lemma1").is_number());
  }
  SUBCASE("unachievable tolerance fails with exit 1 and still writes the report") {
    const auto r = run_cli({"verify", "--phi", "0.3", "--tolerance", "1e-30"});
    CHECK(r.code == kExitVerifyFailed);
    CHECK(Json::parse(r.out).at("pass") == false);
  }
  SUBCASE("a 97-point grid gives 194 passing records") {
    RunConfig cfg;
    cfg.command = Command::Verify;
    cfg.grid_points = 97;
    const auto report = run_verification(cfg);
    CHECK(report.records.size() == 194);
    int not_applicable = 0;
    for (const auto& rec : report.records) {
      CAPTURE(rec.phi);
      CHECK(rec.pass);
      if (!rec.residual_lemma1) {
        ++not_applicable;
        CHECK(rec.decay_class != wojcik::DecayClass::Decaying);
      }
    }
    CHECK(not_applicable > 0);
  }
  SUBCASE("pass is the conjunction of the applicable residuals") {
    const auto rec = verify_point(0.4, wojcik::Branch::MinusI, wojcik::kDefaultAlpha, 1e-10);
    const double worst = std::max({rec.residual_stationarity, rec.residual_lemma1.value_or(0.0),
                                   rec.residual_theta_forms, rec.residual_det_root,
                                   rec.residual_corollary3});
    CHECK(rec.pass == (worst <= 1e-10));
    const auto strict = verify_point(0.4, wojcik::Branch::MinusI, wojcik::kDefaultAlpha, worst / 2);
    CHECK_FALSE(strict.pass);
  }
  SUBCASE("CSV report") {
    const auto r = run_cli({"verify", "--phi", "0.25", "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 3);
    CHECK(split(lines[0]).size() == split(lines[1]).size());
    CHECK(split(lines[1])[8] == "NOT-APPLICABLE");
  }
}

TEST_CASE("sweep") {
  const auto r = run_cli({"sweep", "--grid", "9"});
  REQUIRE(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 19);
  CHECK(lines[0] == "phi,branch,theta_s_abs_sq,gamma,cos2xi,sin2xi,decay_class");
  bool found = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto c = split(lines[i]);
    REQUIRE(c.size() == 7);
    const double cs = std::stod(c[4]);
    const double sn = std::stod(c[5]);
    CHECK(std::abs(cs * cs + sn * sn - 1.0) <= 1e-12);
    if (c[0] == "0.25" && c[1] == "plus-i") {
      found = true;
      CHECK(cs == 0.0);
      CHECK(sn == 1.0);
    }
  }
  CHECK(found);
  CHECK(run_cli({"sweep", "--grid", "1"}).code == kExitConfig);
}

TEST_CASE("configuration errors and help") {
  CHECK(run_cli({}).code == kExitConfig);
  CHECK(run_cli({"bogus"}).code == kExitConfig);
  CHECK(run_cli({"stationary", "--branch", "up"}).code == kExitConfig);
  CHECK(run_cli({"stationary", "--format", "xml"}).code == kExitConfig);
  CHECK(run_cli({"verify", "--tolerance", "0"}).code == kExitConfig);
  CHECK(run_cli({"stationary", "--phi", "abc"}).code == kExitConfig);
  const auto help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("stationary") != std::string::npos);
}

TEST_CASE("output files and determinism") {
  const auto a = temp_file("verify_a.json");
  const auto b = temp_file("verify_b.json");
  REQUIRE(run_cli({"verify", "--grid", "11", "--output", a.string()}).code == 0);
  REQUIRE(run_cli({"verify", "--grid", "11", "--output", b.string()}).code == 0);
  const std::string ta = slurp(a);
  CHECK_FALSE(ta.empty());
  CHECK(ta == slurp(b));
  CHECK(ta.find('\r') == std::string::npos);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}
