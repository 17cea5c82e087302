#include <doctest.h>

#include <filesystem>

#include "helpers.hpp"

using namespace levichk;
using namespace levichk::testing;

TEST_CASE("gallery files round-trip") {
  for (const auto& entry : std::filesystem::directory_iterator(LEVICHK_PROBLEMS_DIR)) {
    if (entry.path().extension() != ".json") continue;
    INFO(entry.path().filename().string());
    ProblemSpec spec = load_problem(entry.path());
    Json doc = problem_to_json(spec);
    ProblemSpec again = problem_from_json(doc);
    CHECK(problem_to_json(again) == doc);
    CHECK(input_hash(again) == input_hash(spec));
  }
}

TEST_CASE("hash is stable and sensitive") {
  ProblemSpec a = gallery("third_order_ex33");
  std::string h = input_hash(a);
  CHECK(h.size() == 16);
  CHECK(input_hash(gallery("third_order_ex33")) == h);
  CHECK(input_hash(gallery("third_order_ex33_broken")) != h);
}

TEST_CASE("document errors name their location") {
  Json doc = problem_to_json(gallery("third_order_ex33"));
  Json extra = doc;
  extra["colour"] = "blue";
  CHECK_THROWS_WITH_AS(problem_from_json(extra), doctest::Contains("colour"), SpecError);

  Json bad_dx = doc;
  bad_dx["lower_order"][2]["dx"] = Json::array({1, 1});
  CHECK_THROWS_WITH_AS(problem_from_json(bad_dx), doctest::Contains("lower_order[2]"), SpecError);

  Json xroot = doc;
  xroot["roots"][1][0] = "t + x1";
  CHECK_THROWS_WITH_AS(problem_from_json(xroot), doctest::Contains("roots[1]"), SpecError);

  Json syntax = doc;
  syntax["forcing"] = "sin(t";
  CHECK_THROWS_AS(problem_from_json(syntax), SpecError);

  Json missing = doc;
  missing.erase("roots");
  CHECK_THROWS_AS(problem_from_json(missing), SpecError);
}

TEST_CASE("report serialization") {
  LeviReport r = check_main_theorem(gallery("third_order_ex33_broken"));
  Json j = to_json(r);
  CHECK(j["overall"] == "FAIL");
  CHECK(j["conditions"].size() == 3);

  SweepResult sw{{16, 32}, {1.0, std::numeric_limits<double>::infinity()},
                 std::numeric_limits<double>::infinity()};
  Json s = to_json(sw);
  CHECK(s["fitted_q"] == "inf");
}
