#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qwalk/cli.hpp"
#include "qwalk/core.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/sgf.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/wojcik.hpp"

namespace py = pybind11;
using namespace qwalk;

namespace {

using Rows = std::array<std::array<Complex, 2>, 2>;

Rows to_rows(const Matrix2& m) { return {{{m.a, m.b}, {m.c, m.d}}}; }
Matrix2 from_rows(const Rows& r) { return {r[0][0], r[0][1], r[1][0], r[1][1]}; }

}  // namespace

PYBIND11_MODULE(_qwalk, m) {
  m.doc() = "One-defect quantum walk on the line: simulation, closed-form stationary states, checks.";

  py::register_exception<SingularParameterError>(m, "SingularParameterError", PyExc_ArithmeticError);
  py::register_exception<DegenerateStateError>(m, "DegenerateStateError", PyExc_ValueError);
  py::register_exception<BranchDegenerateError>(m, "BranchDegenerateError", PyExc_ValueError);
  py::register_exception<DivergentSeriesError>(m, "DivergentSeriesError", PyExc_ArithmeticError);
  py::register_exception<BoundaryLeakError>(m, "BoundaryLeakError", PyExc_RuntimeError);
  py::register_exception<InsufficientDataError>(m, "InsufficientDataError", PyExc_ValueError);
  py::register_exception<OverflowCapError>(m, "OverflowCapError", PyExc_OverflowError);
  // DomainError derives from std::domain_error, which pybind11 maps to ValueError.

  // --- core ---------------------------------------------------------------
  py::class_<Amplitude>(m, "Amplitude")
      .def(py::init<>())
      .def(py::init([](Complex l, Complex r) { return Amplitude{l, r}; }), py::arg("left"),
           py::arg("right"))
      .def_readwrite("left", &Amplitude::left)
      .def_readwrite("right", &Amplitude::right)
      .def("weight", &Amplitude::weight)
      .def("__repr__", [](const Amplitude& a) {
        std::ostringstream os;
        os << "Amplitude(" << a.left << ", " << a.right << ")";
        return os.str();
      });

  py::class_<Coin>(m, "Coin")
      .def(py::init([](const Rows& rows) { return Coin(from_rows(rows)); }), py::arg("matrix"))
      .def_static("hadamard", &Coin::hadamard)
      .def_static("identity", &Coin::identity)
      .def_property_readonly("matrix", [](const Coin& c) { return to_rows(c.matrix()); })
      .def("times_phase", &Coin::times_phase);

  m.def("split_coin", [](const Coin& u) {
    const auto s = split_coin(u);
    return py::make_tuple(to_rows(s.p), to_rows(s.q));
  }, "(P, Q) with P the top row of the coin and Q the bottom row");

  py::class_<CoinField>(m, "CoinField")
      .def_static("wojcik", &CoinField::wojcik, py::arg("phi"))
      .def_static("homogeneous", &CoinField::homogeneous)
      .def_static("one_defect", &CoinField::one_defect)
      .def_static("with_sites", &CoinField::with_sites)
      .def("coin_at", &CoinField::coin_at)
      .def_property_readonly("phase", &CoinField::phase);
  m.def("build_wojcik_coin_field", &CoinField::wojcik, py::arg("phi"));

  py::class_<WalkState>(m, "WalkState")
      .def(py::init<int, long>(), py::arg("half_width"), py::arg("time") = 0)
      .def_static("localized", &WalkState::localized, py::arg("half_width"), py::arg("origin"))
      .def_property_readonly("half_width", &WalkState::half_width)
      .def_property_readonly("time", &WalkState::time)
      .def_property_readonly("boundary_leak", &WalkState::boundary_leak)
      .def("at", &WalkState::at)
      .def("set", &WalkState::set)
      .def("sites", [](const WalkState& s) {
        return std::vector<Amplitude>(s.sites().begin(), s.sites().end());
      });

  py::class_<Measure>(m, "Measure")
      .def_readonly("half_width", &Measure::half_width)
      .def_readonly("values", &Measure::values)
      .def("at", &Measure::at);

  m.def("step", &step);
  m.def("evolve", &evolve, py::arg("state"), py::arg("field"), py::arg("n"));
  m.def("measure", &measure);
  m.def("total_norm", &total_norm);
  m.def("time_averaged_measure", &time_averaged_measure, py::arg("init"), py::arg("field"),
        py::arg("horizon"));

  // --- closed forms ---------------------------------------------------------
  py::enum_<wojcik::Branch>(m, "Branch")
      .value("PLUS_I", wojcik::Branch::PlusI)
      .value("MINUS_I", wojcik::Branch::MinusI);
  py::enum_<wojcik::DecayClass>(m, "DecayClass")
      .value("DECAYING", wojcik::DecayClass::Decaying)
      .value("MARGINAL", wojcik::DecayClass::Marginal)
      .value("GROWING", wojcik::DecayClass::Growing);

  py::class_<wojcik::StationarySolution>(m, "StationarySolution")
      .def_readonly("phase", &wojcik::StationarySolution::phase)
      .def_readonly("branch", &wojcik::StationarySolution::branch)
      .def_readonly("alpha", &wojcik::StationarySolution::alpha)
      .def_readonly("beta", &wojcik::StationarySolution::beta)
      .def_readonly("lambda_sq", &wojcik::StationarySolution::lambda_sq)
      .def_readonly("lam", &wojcik::StationarySolution::lambda)
      .def_readonly("theta_s", &wojcik::StationarySolution::theta_s)
      .def_readonly("theta_l", &wojcik::StationarySolution::theta_l)
      .def_readonly("gamma", &wojcik::StationarySolution::gamma)
      .def_readonly("theta_s_abs_sq", &wojcik::StationarySolution::theta_s_abs_sq)
      .def_readonly("decay_class", &wojcik::StationarySolution::decay_class);

  m.def("lambda_squared", &wojcik::lambda_squared);
  m.def("select_lambda", &wojcik::select_lambda);
  m.def("theta_s_form1", &wojcik::theta_s_form1);
  m.def("theta_s_all_forms", &wojcik::theta_s_all_forms);
  m.def("theta_s_squared", [](double phi, wojcik::Branch b) {
    const auto t = wojcik::theta_s_squared(phi, b);
    return py::make_tuple(t.value, t.abs_sq);
  });
  m.def("gamma_factor", &wojcik::gamma_factor);
  m.def("build_solution", &wojcik::build_solution, py::arg("phi"), py::arg("branch"),
        py::arg("alpha") = Complex(wojcik::kDefaultAlpha));
  m.def("stationary_amplitude", &wojcik::stationary_amplitude);
  m.def("stationary_measure", &wojcik::stationary_measure);
  m.def("corollary_trig", [](double phi, wojcik::Branch b) {
    const auto t = wojcik::corollary_trig(phi, b);
    return py::make_tuple(t.cos2xi, t.sin2xi);
  });
  m.def("phase_grid", &wojcik::phase_grid);

  // --- generating functions ---------------------------------------------------
  py::enum_<sgf::Side>(m, "Side").value("PLUS", sgf::Side::Plus).value("MINUS", sgf::Side::Minus);
  py::enum_<sgf::Chirality>(m, "Chirality")
      .value("L", sgf::Chirality::Left)
      .value("R", sgf::Chirality::Right);

  m.def("det_A_roots", [](Complex lambda) {
    const auto r = sgf::det_A_roots(lambda);
    return py::make_tuple(r.theta_s, r.theta_l);
  });
  m.def("truncated_series", &sgf::truncated_series, py::arg("sol"), py::arg("side"),
        py::arg("chirality"), py::arg("z"), py::arg("terms"));
  m.def("lemma1_residual", [](const wojcik::StationarySolution& sol, Complex z, int terms) {
    const auto r = sgf::lemma1_residual(sol, z, terms);
    return py::make_tuple(r.plus, r.minus);
  }, py::arg("sol"), py::arg("z"), py::arg("terms") = sgf::kDefaultTerms);

  // --- spectral ---------------------------------------------------------------
  m.def("stationarity_residual",
        py::overload_cast<const wojcik::StationarySolution&, const CoinField&, int, int>(
            &spectral::stationarity_residual),
        py::arg("sol"), py::arg("field"), py::arg("half_width"), py::arg("margin") = 2);
  m.def("overflow_cap", &spectral::overflow_cap);
  m.def("decay_fit", [](const std::vector<double>& values) {
    if (values.size() % 2 == 0) throw DomainError("measure values must have odd length 2L+1");
    return spectral::decay_fit(Measure{static_cast<int>(values.size() / 2), values});
  }, "values indexed x = -L..L");

  // --- command line -------------------------------------------------------------
  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, "Run the qwalk CLI in-process; returns (exit_code, stdout, stderr).");
}
