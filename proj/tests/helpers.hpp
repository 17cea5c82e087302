#pragma once

#include <string>

#include "levichk/io.hpp"

namespace levichk::testing {

inline ProblemSpec gallery(const std::string& name) {
  return load_problem(std::string(LEVICHK_PROBLEMS_DIR) + "/" + name + ".json");
}

inline ProblemSpec from_text(const std::string& text) { return problem_from_json(Json::parse(text)); }

/// Replaces (or adds) the lower-order coefficient with key (dt, dx).
inline ProblemSpec with_coeff(ProblemSpec spec, int dt, std::vector<int> dx, const std::string& coeff) {
  for (auto& term : spec.lower_order)
    if (term.dt == dt && term.dx == dx) {
      term.coeff = parse(coeff);
      return spec;
    }
  spec.lower_order.push_back({dt, std::move(dx), parse(coeff)});
  return spec;
}

/// Value of a symbol at one point.
inline Complex at(const SymbolPoly& s, double t, std::vector<double> xi, std::vector<double> x = {},
                  const ParamTable* params = nullptr) {
  if (x.empty()) x.assign(xi.size(), 0.3);
  return s.evaluate(Bindings{t, std::move(x), params}, xi);
}

inline double bracket_of(const std::vector<double>& xi) { return japanese_bracket(xi); }

}  // namespace levichk::testing
