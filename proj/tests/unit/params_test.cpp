#include <doctest.h>

#include <random>

#include "hardy/errors.hpp"
#include "hardy/params.hpp"
#include "hardy/structure.hpp"
#include "support.hpp"

using namespace hardy;
using testing::oracle;
using testing::params_of;
using testing::rel_err;

TEST_CASE("exponents match the reference values") {
  for (const auto& row : oracle()["exponents"]) {
    const auto p = params_of(row["params"]);
    const auto e = compute_exponents(p);
    const auto& v = row["values"];
    CAPTURE(row["params"].dump());
    CHECK(rel_err(e.lambda_H, v["lambda_H"]) < 1e-14);
    CHECK(rel_err(e.Theta, v["Theta"]) < 1e-14);
    CHECK(rel_err(e.ell, v["ell"]) < 1e-13);
    CHECK(rel_err(e.lambda_star, v["lambda_star"]) < 1e-13);
    CHECK(rel_err(e.q_crit, v["q_crit"]) < 1e-14);
    CHECK(rel_err(e.theta_hat, v["theta_hat"]) < 1e-14);
    CHECK(rel_err(e.Theta_hat, v["Theta_hat"]) < 1e-14);
    CHECK(e.p_minus.has_value() == v.contains("p_minus"));
    if (v.contains("p_minus")) {
      CHECK(rel_err(*e.p_minus, v["p_minus"]) < 1e-13);
      CHECK(rel_err(*e.p_plus, v["p_plus"]) < 1e-13);
      CHECK(rel_err(*e.theta_minus, v["theta_minus"]) < 1e-13);
      CHECK(rel_err(*e.theta_plus, v["theta_plus"]) < 1e-13);
    }
  }
}

TEST_CASE("worked exponent examples") {
  const auto e = compute_exponents({3, 2, 0, 0});
  CHECK(e.lambda_H == 0.25);
  CHECK(e.Theta == 2.0);
  CHECK(e.ell == 2.0);
  CHECK(*e.p_minus == doctest::Approx(0.0));
  CHECK(*e.p_plus == doctest::Approx(1.0));
  CHECK(*e.theta_minus == doctest::Approx(-2.0));
  CHECK(*e.theta_plus == doctest::Approx(-1.0));
  CHECK(e.lambda_star == -2.0);
  CHECK(e.q_crit == 5.0);
  CHECK(e.theta_hat == -3.0);
  CHECK(e.Theta_hat == -1.0);

  const auto h = compute_exponents({3, 2, 0, 0.25});
  CHECK(h.at_hardy());
  CHECK(*h.p_minus == 0.5);
  CHECK(*h.p_plus == 0.5);
  CHECK(*h.theta_minus == -1.5);
  CHECK(*h.theta_plus == -1.5);

  CHECK_FALSE(compute_exponents({3, 2, 0, 1}).p_plus.has_value());
}

TEST_CASE("classification matches the reference labels") {
  for (const auto& row : oracle()["labels"]) {
    const auto c = classify(params_of(row["params"]));
    CAPTURE(row["params"].dump());
    CHECK(to_string(c.major) == row["label"][0].get<std::string>());
    if (row["label"][1].is_null()) CHECK(c.subcase == SubCase::None);
    else CHECK(to_string(c.subcase) == row["label"][1].get<std::string>());
  }
}

TEST_CASE("boundary equality tolerance") {
  CHECK(classify({3, 2, -2.0 + 5e-10, 0}).subcase == SubCase::LowerBoundary);
  CHECK(classify({3, 2, -2.0 + 1e-6, 0}).subcase == SubCase::Interior);
  CHECK(classify({3, 2, -1.0 - 5e-10, 0}).subcase == SubCase::UpperBoundary);
  CHECK(classify({3, 2, -1.0 + 1e-6, 0}).major == MajorCase::M2);
  CHECK(classify({3, 2, -2.0 - 1e-6, 0}).major == MajorCase::M1);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(compute_exponents({2, 2, 0, 0}), ValidationError);
  CHECK_THROWS_AS(compute_exponents({3, 1, 0, 0}), ValidationError);
  CHECK_THROWS_AS(compute_exponents({3, 0.5, 0, 0}), ValidationError);
  CHECK_THROWS_AS(classify({3, std::nan(""), 0, 0}), ValidationError);
}

TEST_CASE("Kelvin dual parameters") {
  const auto d = kelvin_dual_params({4, 2, 4, 0});
  CHECK(d == ProblemParams{4, 2, -6, 0});
  const auto m2 = kelvin_dual_params({3, 2, 0, 0});
  CHECK(m2.theta == -3.0);
  CHECK(classify(m2).major == MajorCase::M1);
}

TEST_CASE("exponent identities on sampled tuples") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> uq(1.05, 6.0), ut(-8.0, 8.0), ul(-10.0, 10.0);
  for (int n : {3, 4, 5, 7, 10}) {
    for (int k = 0; k < 400; ++k) {
      const ProblemParams p{n, uq(gen), ut(gen), ul(gen)};
      const auto e = compute_exponents(p);
      const auto d = kelvin_dual_params(p);
      CAPTURE(p.q);
      CAPTURE(p.theta);
      CAPTURE(p.lambda);
      CHECK(kelvin_dual_params(d).theta == doctest::Approx(p.theta).epsilon(1e-14));
      CHECK(std::abs(compute_exponents(d).ell - e.ell) <= 1e-12 * std::max(1.0, std::abs(e.ell)));
      CHECK(e.lambda_star <= e.lambda_H + 1e-12 * std::max(1.0, e.lambda_H));
      CHECK(((e.ell > 0) == (p.lambda > e.lambda_star)));
      if (e.p_plus) {
        CHECK(std::abs(*e.p_minus + *e.p_plus - (n - 2.0)) <= 1e-12 * (n - 2.0));
        CHECK(std::abs(*e.p_minus * *e.p_plus - p.lambda) <= 1e-12 * std::max(1.0, std::abs(p.lambda)));
        CHECK(*e.theta_plus > -2.0);
      }
      const auto a = classify(p), b = classify(d);
      if (a.major == MajorCase::M1) CHECK(b.major == MajorCase::M2);
      else if (a.major == MajorCase::M2) CHECK(b.major == MajorCase::M1);
      else CHECK(b.major == a.major);
    }
  }
}

TEST_CASE("lambda_star reaches lambda_H exactly at q_crit") {
  for (int n : {3, 4, 6}) {
    for (double theta : {-1.0, 0.0, 2.5}) {
      const double qc = (n + 2.0 * theta + 2.0) / (n - 2.0);
      if (!(qc > 1.0)) continue;
      const auto at = compute_exponents({n, qc, theta, 0});
      CHECK(at.lambda_star == doctest::Approx(at.lambda_H).epsilon(1e-12));
      const auto off = compute_exponents({n, qc * 1.1, theta, 0});
      CHECK(off.lambda_star < off.lambda_H);
    }
  }
}

TEST_CASE("solution set structure") {
  SUBCASE("case U: unique power solution") {
    const auto r = solution_set({3, 2, 0, 1});
    CHECK(r.exists);
    CHECK(r.unique);
    CHECK(r.family == Family::Single);
    CHECK(r.radially_symmetric);
    REQUIRE(r.classes.size() == 1);
    CHECK(r.classes[0].name == "U0");
    CHECK(r.classes[0].near_zero.p == 2.0);
    CHECK(*r.classes[0].near_zero.c == doctest::Approx(3.0));
    CHECK(r.classes[0].at_infinity.source == "U0");
  }
  SUBCASE("case M2: one-parameter family below U0") {
    const auto r = solution_set({3, 2, 0, 0});
    CHECK(r.exists);
    CHECK_FALSE(r.unique);
    CHECK(r.family == Family::OneParameter);
    REQUIRE(r.classes.size() == 2);
    const auto& g = r.classes[1];
    CHECK(g.name == "u_gamma");
    CHECK(g.parametrized);
    CHECK(g.near_zero.p == doctest::Approx(1.0));
    CHECK_FALSE(g.near_zero.c.has_value());
    CHECK(g.at_infinity.source == "U0");
  }
  SUBCASE("case M1 mirrors M2 at infinity") {
    const auto r = solution_set({3, 2, -5, 0});
    REQUIRE(r.classes.size() == 2);
    CHECK(r.classes[1].name == "U_gamma");
    CHECK(r.classes[1].near_zero.source == "U0");
    CHECK(r.classes[1].at_infinity.p == doctest::Approx(0.0));
  }
  SUBCASE("case N: no solutions") {
    for (auto p : {ProblemParams{3, 2, -1.5, 0}, ProblemParams{3, 2, -2, 0}, ProblemParams{3, 2, -1.5, 0.25}}) {
      const auto r = solution_set(p);
      CHECK_FALSE(r.exists);
      CHECK(r.family == Family::None);
      CHECK(r.classes.empty());
      CHECK_FALSE(r.radially_symmetric);
    }
  }
  SUBCASE("json keys") {
    const auto j = to_json(solution_set({3, 2, 0, 0}));
    CHECK(j["family"] == "one_parameter");
    CHECK(j["label"]["major"] == "M2");
  }
}
