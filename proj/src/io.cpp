#include "levichk/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>

namespace levichk {

namespace {

void reject_unknown(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.contains(key)) throw SpecError(where + ": unknown key '" + key + "'");
}

const Json& require(const Json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SpecError(where + ": missing key '" + key + "'");
  return *it;
}

int get_int(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw SpecError(where + ": expected an integer");
  return v.get<int>();
}

double get_real(const Json& v, const std::string& where) {
  if (!v.is_number()) throw SpecError(where + ": expected a number");
  return v.get<double>();
}

Expr get_expr(const Json& v, const std::string& where) {
  if (!v.is_string()) throw SpecError(where + ": expected an expression string");
  auto text = v.get<std::string>();
  try {
    return parse(text);
  } catch (const ParseError& err) {
    throw SpecError(where + ": " + err.what());
  }
}

const Json& get_array(const Json& v, const std::string& where) {
  if (!v.is_array()) throw SpecError(where + ": expected an array");
  return v;
}

}  // namespace

ProblemSpec problem_from_json(const Json& doc) {
  if (!doc.is_object()) throw SpecError("problem: expected a JSON object");
  reject_unknown(doc,
                 {"order", "dim", "t_start", "horizon", "parameters", "roots", "lower_order", "forcing", "data",
                  "solver", "sweep"},
                 "problem");
  ProblemSpec spec;
  spec.order = get_int(require(doc, "order", "problem"), "order");
  spec.dim = get_int(require(doc, "dim", "problem"), "dim");
  spec.horizon = get_real(require(doc, "horizon", "problem"), "horizon");
  if (doc.contains("t_start")) spec.t_start = get_real(doc["t_start"], "t_start");

  if (doc.contains("parameters")) {
    const Json& p = doc["parameters"];
    if (!p.is_object()) throw SpecError("parameters: expected an object");
    for (const auto& [name, value] : p.items()) spec.parameters[name] = get_real(value, "parameters." + name);
  }

  const Json& roots = get_array(require(doc, "roots", "problem"), "roots");
  for (std::size_t i = 0; i < roots.size(); ++i) {
    std::string where = "roots[" + std::to_string(i) + "]";
    std::vector<Expr> coeffs;
    for (std::size_t j = 0; j < get_array(roots[i], where).size(); ++j)
      coeffs.push_back(get_expr(roots[i][j], where + "[" + std::to_string(j) + "]"));
    spec.roots.push_back(std::move(coeffs));
  }

  if (doc.contains("lower_order")) {
    const Json& lo = get_array(doc["lower_order"], "lower_order");
    for (std::size_t k = 0; k < lo.size(); ++k) {
      std::string where = "lower_order[" + std::to_string(k) + "]";
      if (!lo[k].is_object()) throw SpecError(where + ": expected an object");
      reject_unknown(lo[k], {"dt", "dx", "coeff"}, where);
      LowerOrderTerm term;
      term.dt = get_int(require(lo[k], "dt", where), where + ".dt");
      const Json& dx = get_array(require(lo[k], "dx", where), where + ".dx");
      for (std::size_t j = 0; j < dx.size(); ++j)
        term.dx.push_back(get_int(dx[j], where + ".dx[" + std::to_string(j) + "]"));
      term.coeff = get_expr(require(lo[k], "coeff", where), where + ".coeff");
      spec.lower_order.push_back(std::move(term));
    }
  }

  if (doc.contains("forcing")) spec.forcing = get_expr(doc["forcing"], "forcing");

  const Json& data = get_array(require(doc, "data", "problem"), "data");
  for (std::size_t k = 0; k < data.size(); ++k) spec.data.push_back(get_expr(data[k], "data[" + std::to_string(k) + "]"));

  if (doc.contains("solver")) {
    const Json& s = doc["solver"];
    if (!s.is_object()) throw SpecError("solver: expected an object");
    reject_unknown(s, {"modes", "cfl", "sobolev_s", "cadence", "dealias"}, "solver");
    if (s.contains("modes")) spec.solver.modes = get_int(s["modes"], "solver.modes");
    if (s.contains("cfl")) spec.solver.cfl = get_real(s["cfl"], "solver.cfl");
    if (s.contains("sobolev_s")) spec.solver.sobolev_s = get_real(s["sobolev_s"], "solver.sobolev_s");
    if (s.contains("cadence")) spec.solver.cadence = get_int(s["cadence"], "solver.cadence");
    if (s.contains("dealias")) {
      if (!s["dealias"].is_boolean()) throw SpecError("solver.dealias: expected a boolean");
      spec.solver.dealias = s["dealias"].get<bool>();
    }
  }
  if (doc.contains("sweep")) {
    const Json& s = doc["sweep"];
    if (!s.is_object()) throw SpecError("sweep: expected an object");
    reject_unknown(s, {"n_list", "mode_fraction"}, "sweep");
    if (s.contains("n_list")) {
      spec.sweep.n_list.clear();
      const Json& l = get_array(s["n_list"], "sweep.n_list");
      for (std::size_t k = 0; k < l.size(); ++k)
        spec.sweep.n_list.push_back(get_int(l[k], "sweep.n_list[" + std::to_string(k) + "]"));
    }
    if (s.contains("mode_fraction")) spec.sweep.mode_fraction = get_real(s["mode_fraction"], "sweep.mode_fraction");
  }
  spec.validate();
  return spec;
}

ProblemSpec load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& err) {
    throw SpecError(path.string() + ": invalid JSON: " + err.what());
  }
  return problem_from_json(doc);
}

Json problem_to_json(const ProblemSpec& spec) {
  Json doc;
  doc["order"] = spec.order;
  doc["dim"] = spec.dim;
  doc["t_start"] = spec.t_start;
  doc["horizon"] = spec.horizon;
  doc["parameters"] = Json::object();
  for (const auto& [k, v] : spec.parameters) doc["parameters"][k] = v;
  doc["roots"] = Json::array();
  for (const auto& r : spec.roots) {
    Json row = Json::array();
    for (const auto& c : r) row.push_back(print(c));
    doc["roots"].push_back(row);
  }
  doc["lower_order"] = Json::array();
  for (const auto& t : spec.lower_order) doc["lower_order"].push_back({{"dt", t.dt}, {"dx", t.dx}, {"coeff", print(t.coeff)}});
  doc["forcing"] = print(spec.forcing);
  doc["data"] = Json::array();
  for (const auto& g : spec.data) doc["data"].push_back(print(g));
  doc["solver"] = {{"modes", spec.solver.modes},
                   {"cfl", spec.solver.cfl},
                   {"sobolev_s", spec.solver.sobolev_s},
                   {"cadence", spec.solver.cadence},
                   {"dealias", spec.solver.dealias}};
  doc["sweep"] = {{"n_list", spec.sweep.n_list}, {"mode_fraction", spec.sweep.mode_fraction}};
  return doc;
}

std::string input_hash(const ProblemSpec& spec) {
  std::string text = problem_to_json(spec).dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json to_json(const OrderVerdict& v) {
  Json j;
  j["target"] = v.target;
  j["verdict"] = to_string(v.verdict);
  j["method"] = to_string(v.method);
  j["note"] = v.note;
  if (v.witness) {
    const auto& w = *v.witness;
    Json wj;
    wj["alpha"] = w.term.alpha;
    wj["p"] = w.term.weight;
    wj["order"] = w.term.nominal_order();
    wj["t"] = w.t;
    wj["x"] = w.x;
    wj["value"] = {w.value.real(), w.value.imag()};
    if (!w.direction.empty()) {
      wj["direction"] = w.direction;
      wj["slope"] = w.slope;
    }
    j["witness"] = wj;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json to_json(const LeviReport& r) {
  Json j;
  j["kind"] = r.kind;
  j["applicable"] = r.applicable;
  j["corollary_applicable"] = r.corollary_applicable;
  j["overall"] = r.applicable ? to_string(r.overall) : "NOT-APPLICABLE";
  j["conditions"] = Json::array();
  for (const auto& c : r.conditions)
    j["conditions"].push_back({{"id", c.id}, {"verdict", to_json(c.verdict)}, {"symbol", c.symbol}});
  return j;
}

Json to_json(const OleinikReport& r) {
  Json j;
  j["feasible"] = r.feasible;
  if (r.feasible) {
    j["C"] = r.C;
    j["A"] = r.A;
  } else {
    j["note"] = "infeasible on tested grid";
  }
  if (r.worst) j["worst"] = {{"t", r.worst->t}, {"x", r.worst->x}, {"violation", r.worst->violation}, {"C", r.C}, {"A", r.A}};
  j["t_grid"] = {{"min", r.t_grid.front()}, {"max", r.t_grid.back()}, {"points", r.t_grid.size()}};
  j["x_points"] = r.x_grid.size();
  j["constants"] = {{"min", r.constant_grid.front()}, {"max", r.constant_grid.back()}, {"points", r.constant_grid.size()}};
  return j;
}

Json to_json(const OracleReport& r) {
  Json j;
  j["name"] = r.name;
  j["max_deviation"] = std::isfinite(r.max_deviation) ? Json(r.max_deviation) : Json("inf");
  j["tolerance"] = r.tolerance;
  j["samples"] = r.samples;
  j["passed"] = r.passed;
  j["skipped"] = r.skipped;
  j["seed"] = r.seed;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const std::vector<OracleReport>& r) {
  Json j = Json::array();
  for (const auto& x : r) j.push_back(to_json(x));
  return j;
}

Json to_json(const RunResult& r) {
  Json j;
  j["dt"] = r.dt;
  j["steps"] = r.steps;
  j["outputs"] = r.times.size();
  j["blowup"] = r.blowup;
  if (r.blowup) j["blowup_time"] = r.blowup_time;
  if (!r.aniso.empty()) {
    j["aniso_initial"] = r.aniso.front();
    j["aniso_final"] = r.aniso.back();
    j["aniso_max"] = *std::max_element(r.aniso.begin(), r.aniso.end());
  }
  return j;
}

Json to_json(const SweepResult& r) {
  Json j;
  j["n"] = r.n;
  Json rho = Json::array();
  for (double v : r.rho) rho.push_back(std::isfinite(v) ? Json(v) : Json("inf"));
  j["rho"] = rho;
  j["fitted_q"] = std::isfinite(r.fitted_q) ? Json(r.fitted_q) : Json("inf");
  return j;
}

}  // namespace levichk
