#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "levichk/levi.hpp"
#include "levichk/oracle.hpp"

using namespace levichk;
using namespace levichk::testing;

namespace {

std::vector<SymbolPoly> linear_roots(const std::vector<std::string>& coeffs) {
  std::vector<SymbolPoly> out;
  for (const auto& c : coeffs) out.push_back(SymbolPoly::xi(1, 0, parse(c)));
  return out;
}

ProblemSpec spec_with_roots(const std::vector<std::string>& coeffs) {
  ProblemSpec spec;
  spec.order = static_cast<int>(coeffs.size());
  for (const auto& c : coeffs) spec.roots.push_back({parse(c)});
  spec.data.assign(coeffs.size(), Expr());
  return spec;
}

}  // namespace

TEST_CASE("closed forms match the recursive construction") {
  SampleGrid grid = SampleGrid::standard(1, 0.0, 1.0, {});
  for (auto coeffs : std::vector<std::vector<std::string>>{{"t", "-1"}, {"1", "t", "1 - t"}, {"cos(t)", "-1", "t*t", "2"}}) {
    auto roots = linear_roots(coeffs);
    auto [T, Tinv] = closed_form_T(static_cast<int>(coeffs.size()), roots);
    SchurData s = build_schur(roots);
    for (int i = 0; i < T.size(); ++i)
      for (int j = 0; j < T.size(); ++j) {
        CHECK(same_symbol(T(i, j), s.T(i, j), grid));
        CHECK(same_symbol(Tinv(i, j), s.Tinv(i, j), grid));
      }
  }
  CHECK_THROWS(closed_form_T(5, linear_roots({"1", "2", "3", "4", "5"})));
}

TEST_CASE("homogeneous enumeration") {
  auto roots = linear_roots({"1", "t"});
  double t = 0.5, xi = 2.0, br = std::sqrt(5.0);
  double m1 = xi / br, m2 = t * xi / br;
  CHECK(std::abs(at(enum_homogeneous(0, 2, roots), t, {xi}) - 1.0) < 1e-14);
  CHECK(std::abs(at(enum_homogeneous(2, 2, roots), t, {xi}) - (m1 * m1 + m1 * m2 + m2 * m2)) < 1e-14);
  CHECK(std::abs(at(enum_homogeneous(3, 1, roots), t, {xi}) - m1 * m1 * m1) < 1e-14);
}

TEST_CASE("same_symbol distinguishes") {
  SampleGrid grid = SampleGrid::standard(1, 0.0, 1.0, {});
  SymbolPoly a = SymbolPoly::monomial({2}, 2, Expr::constant(1.0));
  SymbolPoly b = SymbolPoly::constant(1, Expr::constant(1.0)) - SymbolPoly::bracket(1, -2);
  CHECK(same_symbol(a, b, grid));
  CHECK_FALSE(same_symbol(a, SymbolPoly::constant(1, Expr::constant(1.0)), grid));
}

TEST_CASE("finite differences of T") {
  ProblemSpec spec = spec_with_roots({"t^2", "-1"});
  LeviData d = derive(spec);
  // e21 = D_t(t^2 xi <xi>^-1) at t = 0.5, xi = 1.
  CHECK(std::abs(at(d.E(1, 0), 0.5, {1.0}) - Complex(0, -1) * 2.0 * 0.5 / std::sqrt(2.0)) < 1e-14);
  OracleReport fd = fd_check_E(spec, 1e-5, 50, 3);
  CHECK(fd.passed);
  CHECK(fd.max_deviation < fd.tolerance);
  CHECK_FALSE(fd_check_E(spec, 1e-1, 10, 3).passed);
}

TEST_CASE("all oracles on the gallery") {
  for (const char* name : {"second_order_oleinik", "second_order_talpha", "third_order_ex33", "fourth_order_ex44",
                           "second_order_r2"}) {
    auto reports = verify_all(gallery(name));
    CHECK(reports.size() == 6);
    for (const auto& r : reports) {
      INFO(name << " " << r.name << " " << r.max_deviation << " " << r.note);
      CHECK(r.passed);
      CHECK(r.max_deviation <= r.tolerance);
    }
  }
}

TEST_CASE("closed-form oracle skips m = 5") {
  OracleReport r = check_closed_form(spec_with_roots({"1", "t", "-1", "2", "-t"}), 10, 1);
  CHECK(r.skipped);
  CHECK(r.passed);
  OracleReport e = check_E_product(spec_with_roots({"1", "t", "-1", "2", "-t"}), 20, 1);
  CHECK(e.passed);
}
