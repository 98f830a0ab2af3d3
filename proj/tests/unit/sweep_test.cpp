#include <doctest.h>

#include <sstream>

#include "hardy/errors.hpp"
#include "hardy/sweep.hpp"

using namespace hardy;

namespace {

SweepSpec atlas_spec(std::size_t n) {
  SweepSpec s;
  s.axes = {{"lambda", -3, 3, n}, {"theta", -4, 4, n}};
  s.fixed = {3, 2, 0, 0};
  return s;
}

}  // namespace

TEST_CASE("atlas boundaries follow the analytic curves") {
  const auto atlas = run_sweep(atlas_spec(201));
  REQUIRE(atlas.cells.size() == 201u * 201u);
  const auto b = check_atlas_boundaries(atlas);
  CHECK(b.passed);
  CHECK(b.boundary_pairs > 0);
  CHECK(b.worst_pair_distance <= 1.0);
  CHECK(b.worst_curve_distance <= 1.0);
}

TEST_CASE("atlas ending on the Hardy line") {
  SweepSpec s;
  s.axes = {{"lambda", -2, 0.25, 31}, {"theta", -3, 1, 31}};
  s.fixed = {3, 2, 0, 0};
  const auto b = check_atlas_boundaries(run_sweep(s));
  CHECK(b.passed);
  CHECK(b.missed_samples == 0);
}

TEST_CASE("boundary check catches a misplaced label") {
  auto atlas = run_sweep(atlas_spec(101));
  // relabel a patch deep inside the U region
  for (std::size_t i = 80; i < 85; ++i)
    for (std::size_t j = 10; j < 15; ++j) atlas.cells[i * 101 + j].label.major = MajorCase::M1;
  CHECK_FALSE(check_atlas_boundaries(atlas).passed);
}

TEST_CASE("worker count does not change the atlas") {
  auto s = atlas_spec(41);
  s.threads = 1;
  const auto a = run_sweep(s);
  s.threads = 7;
  const auto b = run_sweep(s);
  REQUIRE(a.cells.size() == b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].label == b.cells[i].label);
    CHECK(a.cells[i].ell == b.cells[i].ell);
  }
}

TEST_CASE("atlas CSV") {
  auto s = atlas_spec(3);
  const auto atlas = run_sweep(s);
  std::ostringstream os;
  write_atlas_csv(os, atlas);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "lambda,theta,major,subcase,ell,lambda_star,exists");
  std::getline(is, line);
  CHECK(line.rfind("-3,-4,M1,,", 0) == 0);
  std::size_t rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 8);
}

TEST_CASE("sweep spec parsing and validation") {
  const auto spec = sweep_spec_from_json(nlohmann::json::parse(R"({
    "axes": [{"name": "q", "start": 1.5, "stop": 4, "count": 6}],
    "fixed": {"N": 4, "theta": 1, "lambda": -1},
    "outputs": ["major", "exists"]
  })"));
  CHECK(spec.fixed.N == 4);
  CHECK(spec.outputs.size() == 2);
  const auto atlas = run_sweep(spec);
  CHECK(atlas.cells.size() == 6);
  CHECK(atlas.cells.back().params.q == 4.0);

  auto bad = [](const char* text) { return sweep_spec_from_json(nlohmann::json::parse(text)); };
  CHECK_THROWS_AS(bad(R"({"axes": []})"), ValidationError);
  CHECK_THROWS_AS(bad(R"({"axes": [{"name": "q", "start": 0.5, "stop": 2, "count": 4}]})"), ValidationError);
  CHECK_THROWS_AS(bad(R"({"axes": [{"name": "N", "start": 3, "stop": 5, "count": 3}]})"), ValidationError);
  CHECK_THROWS_AS(bad(R"({"axes": [{"name": "theta", "start": 0, "stop": 1, "count": 1}]})"), ValidationError);
  CHECK_THROWS_AS(bad(R"({"axes": [{"name": "theta", "start": 0}]})"), ValidationError);
  CHECK_THROWS_AS(bad(R"({"axes": [{"name": "theta", "start": 0, "stop": 1, "count": 3}], "outputs": ["x"]})"),
                  ValidationError);
  CHECK_THROWS_AS(check_atlas_boundaries(atlas), ValidationError);
}
