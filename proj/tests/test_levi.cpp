#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "levichk/levi.hpp"

using namespace levichk;
using namespace levichk::testing;

namespace {

ProblemSpec second_order(const std::string& a, const std::string& b, const std::string& coeff01 = "0") {
  Json doc = {{"order", 2}, {"dim", 1}, {"horizon", 1}, {"roots", {{a}, {b}}},
              {"lower_order", {{{"dt", 0}, {"dx", {1}}, {"coeff", coeff01}}}}, {"data", {"sin(x1)", "0"}}};
  return problem_from_json(doc);
}

const ConditionRecord* first_failure(const LeviReport& r) {
  for (const auto& c : r.conditions)
    if (c.verdict.verdict == Verdict::Fail) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("E for m = 2 and m = 3") {
  ProblemSpec two = second_order("t^2", "-1");
  LeviData d2 = derive(two);
  double t = 0.5, xi = 2.0, br = std::sqrt(5.0);
  CHECK(std::abs(at(d2.E(1, 0), t, {xi}) - Complex(0, -1) * 2.0 * t * xi / br) < 1e-13);
  CHECK(d2.E(0, 0).is_zero());
  CHECK(d2.E(1, 1).is_zero());

  ProblemSpec three = from_text(R"j({"order": 3, "dim": 1, "horizon": 1,
      "roots": [["t"], ["1"], ["-1"]], "data": ["0", "0", "0"]})j");
  LeviData d3 = derive(three);
  double mu1 = t * xi / br, mu2 = xi / br;
  Complex expect31 = Complex(0, -1) * xi / br * (mu1 - mu2);
  CHECK(std::abs(at(d3.E(2, 0), t, {xi}) - expect31) < 1e-13);
  CHECK(std::abs(at(d3.E(1, 0), t, {xi}) - Complex(0, -1) * xi / br) < 1e-13);
  CHECK(std::abs(at(d3.E(2, 1), t, {xi}) - Complex(0, -1) * xi / br) < 1e-13);
}

TEST_CASE("D has only its last row") {
  LeviData d = derive(gallery("third_order_ex33"));
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 3; ++k) CHECK(d.D(i, k).is_zero());
  double t = 0.2, xi = 3.0, br = std::sqrt(10.0);
  // d_{3,2} = b_2 + b_3 T_{3,2}, b_3 = 0, b_2 = -i xi <xi>^-1.
  CHECK(std::abs(at(d.D(2, 1), t, {xi}) - Complex(0, -1) * xi / br) < 1e-13);
  CHECK(d.D(2, 2).is_zero());
}

TEST_CASE("main theorem on the third-order example") {
  ProblemSpec base = gallery("third_order_ex33");
  LeviReport ok = check_main_theorem(base);
  CHECK(ok.overall == Verdict::Pass);
  CHECK(ok.kind == "main");
  REQUIRE(ok.conditions.size() == 3);
  CHECK(ok.conditions[0].id == e_condition_id(2, 1));
  CHECK(ok.conditions[1].id == de_condition_id(3, 1));
  CHECK(ok.conditions[2].id == de_condition_id(3, 2));

  ProblemSpec p1 = with_coeff(with_coeff(base, 1, {1}, "-i + 0.1"), 0, {2}, "i - 0.1");
  LeviReport r1 = check_main_theorem(p1);
  CHECK(r1.overall == Verdict::Fail);
  REQUIRE(first_failure(r1));
  CHECK(first_failure(r1)->id == de_condition_id(3, 2));

  for (auto spec : {with_coeff(base, 0, {2}, "i + 0.1"), with_coeff(base, 0, {1}, "0.1")}) {
    LeviReport r = check_main_theorem(spec);
    CHECK(r.overall == Verdict::Fail);
    REQUIRE(first_failure(r));
    CHECK(first_failure(r)->id == de_condition_id(3, 1));
    REQUIRE(first_failure(r)->verdict.witness);
  }
}

TEST_CASE("condition ids") {
  CHECK(e_condition_id(2, 1) == "e[2,1] ∈ S^{-1}");
  CHECK(de_condition_id(3, 1) == "d[3,1]-e[3,1] ∈ S^{-2}");
}

TEST_CASE("main theorem on the fourth-order example") {
  CHECK(check_main_theorem(gallery("fourth_order_ex44")).overall == Verdict::Pass);
}

TEST_CASE("second-order cases") {
  CHECK(check_main_theorem(second_order("t", "-t")).overall == Verdict::Fail);
  CHECK(check_main_theorem(second_order("t", "-t", "-i")).overall == Verdict::Pass);
  CHECK(check_main_theorem(second_order("1", "-1")).overall == Verdict::Pass);
  CHECK(check_main_theorem(gallery("second_order_oleinik")).overall == Verdict::Pass);
  CHECK(check_main_theorem(gallery("second_order_cos")).overall == Verdict::Pass);
}

TEST_CASE("corollary") {
  ProblemSpec talpha = gallery("second_order_talpha");
  CHECK(corollary_applies(talpha));
  LeviReport cor = check_corollary(talpha);
  CHECK(cor.kind == "corollary");
  CHECK(cor.applicable);
  CHECK(cor.overall == Verdict::Pass);

  ProblemSpec wrong = talpha;
  wrong.parameters["w01"] = 0.25;
  CHECK(check_corollary(wrong).overall == Verdict::Fail);
  CHECK(check_main_theorem(wrong).overall == Verdict::Fail);

  ProblemSpec ex33 = gallery("third_order_ex33");
  CHECK(corollary_applies(ex33));
  CHECK(check_corollary(ex33).overall == check_main_theorem(ex33).overall);

  ProblemSpec moving = from_text(R"j({"order": 3, "dim": 1, "horizon": 1,
      "roots": [["t"], ["1"], ["-1"]], "data": ["0", "0", "0"]})j");
  CHECK_FALSE(corollary_applies(moving));
  LeviReport na = check_corollary(moving);
  CHECK_FALSE(na.applicable);
  CHECK(na.overall == Verdict::Inconclusive);
}

TEST_CASE("verdicts do not depend on the x-grid density") {
  for (const char* name : {"third_order_ex33", "third_order_ex33_broken", "fourth_order_ex44", "second_order_r2"}) {
    ProblemSpec spec = gallery(name);
    LeviReport coarse = check_main_theorem(spec, LeviOptions{17, 9});
    LeviReport fine = check_main_theorem(spec, LeviOptions{17, 17});
    CHECK(coarse.overall == fine.overall);
    REQUIRE(coarse.conditions.size() == fine.conditions.size());
    for (std::size_t k = 0; k < coarse.conditions.size(); ++k)
      CHECK(coarse.conditions[k].verdict.verdict == fine.conditions[k].verdict.verdict);
  }
}

TEST_CASE("Oleinik grid search") {
  OleinikReport trivial = check_oleinik(second_order("1", "-1"));
  CHECK(trivial.feasible);
  CHECK(trivial.C == doctest::Approx(1.0));
  CHECK(trivial.A == doctest::Approx(1.0));

  ProblemSpec linear = second_order("t", "-t");
  CHECK_FALSE(check_oleinik(linear).feasible);
  OleinikOptions later;
  later.t_min = 1e-5;
  CHECK(check_oleinik(linear, later).feasible);

  OleinikReport acc = check_oleinik(gallery("second_order_oleinik"));
  CHECK_FALSE(acc.feasible);
  REQUIRE(acc.worst);
  CHECK(acc.worst->violation > 0);
  CHECK(acc.t_grid.size() == 64);

  CHECK_THROWS_AS(check_oleinik(gallery("third_order_ex33")), SpecError);
  CHECK_THROWS_AS(check_oleinik(second_order("t", "1")), SpecError);
}
