#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "levichk/io.hpp"
#include "levichk/levi.hpp"
#include "levichk/oracle.hpp"
#include "levichk/schur.hpp"
#include "levichk/spectral.hpp"
#include "levichk/version.hpp"

namespace py = pybind11;
using namespace levichk;

namespace {

ProblemSpec spec_of(const std::string& text) { return problem_from_json(Json::parse(text)); }

std::string check(const std::string& text) {
  ProblemSpec spec = spec_of(text);
  Json j;
  j["input_hash"] = input_hash(spec);
  j["levi"] = to_json(check_main_theorem(spec));
  j["corollary"] = to_json(check_corollary(spec));
  try {
    j["oleinik"] = to_json(check_oleinik(spec));
  } catch (const SpecError&) {
    // Oleinik's inequality only covers second-order 1D equations with opposite roots.
  }
  return j.dump();
}

py::dict schur(const std::string& text) {
  SchurData s = build_schur(root_symbols(spec_of(text)));
  py::dict d;
  d["T"] = s.T.to_string();
  d["Tinv"] = s.Tinv.to_string();
  d["J"] = s.J.to_string();
  return d;
}

py::dict run(const std::string& text, double fixed_dt) {
  RunResult r = solve(spec_of(text), SolveControls{fixed_dt});
  py::dict d;
  d["times"] = r.times;
  d["component_norms"] = r.component_norms;
  d["aniso"] = r.aniso;
  d["dt"] = r.dt;
  d["steps"] = r.steps;
  d["blowup"] = r.blowup;
  d["blowup_time"] = r.blowup_time;
  d["final_state"] = r.final_state;
  return d;
}

py::dict sweep(const std::string& text) {
  ProblemSpec spec = spec_of(text);
  SweepResult r = frequency_sweep(spec, spec.solver.sobolev_s, spec.sweep.n_list, spec.sweep.mode_fraction);
  py::dict d;
  d["n"] = r.n;
  d["rho"] = r.rho;
  d["fitted_q"] = r.fitted_q;
  return d;
}

std::string verify(const std::string& text, std::uint64_t seed) { return to_json(verify_all(spec_of(text), seed)).dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bindings for the levichk core library";
  m.attr("__version__") = kVersion;

  py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<EvalError>(m, "EvalError", PyExc_ArithmeticError);
  py::register_exception<DiffError>(m, "DiffError", PyExc_ValueError);

  m.def("canonical_problem", [](const std::string& text) { return problem_to_json(spec_of(text)).dump(); },
        "Validated problem document with every key filled in, as JSON text.");
  m.def("input_hash", [](const std::string& text) { return input_hash(spec_of(text)); });
  m.def("check", &check, "Levi, corollary and (when it applies) Oleinik reports as JSON text.");
  m.def("schur", &schur, "T, its inverse and J in debug text form.");
  m.def("solve", &run, py::arg("problem"), py::arg("fixed_dt") = 0.0);
  m.def("sweep", &sweep);
  m.def("verify", &verify, py::arg("problem"), py::arg("seed") = 20240601);

  m.def("evaluate",
        [](const std::string& expr, double t, std::vector<double> x, ParamTable params) {
          return eval(parse(expr), Bindings{t, std::move(x), &params});
        },
        py::arg("expr"), py::arg("t") = 0.0, py::arg("x") = std::vector<double>{}, py::arg("params") = ParamTable{});
  m.def("d_dt", [](const std::string& expr) { return print(d_dt(parse(expr))); });
  m.def("normalize", [](const std::string& expr) { return print(parse(expr)); });
}
