#include <doctest.h>

#include "hardy/barriers.hpp"
#include "hardy/errors.hpp"
#include "hardy/exact.hpp"
#include "hardy/grid.hpp"
#include "hardy/radial.hpp"
#include "support.hpp"

using namespace hardy;
using testing::oracle;
using testing::params_of;
using testing::rel_err;

TEST_CASE("log substitution") {
  CHECK(log_substitute({3, 2, 0, 0}) == doctest::Approx(1.5));
  CHECK(log_substitute({4, 2, 4, 0}) == doctest::Approx(5.0));
  const ProblemParams p{3, 2, 0, 0};
  const auto st = to_log_state(4.0, 3.0, -0.5, p);
  CHECK(st.s == doctest::Approx(std::log(4.0)));
  CHECK(st.phi == doctest::Approx(2.0 * 3.0));
  // dφ/ds = r^{m}(m u + r u_r)
  CHECK(st.dphi == doctest::Approx(2.0 * (0.5 * 3.0 + 4.0 * -0.5)));
}

TEST_CASE("residual normalisation") {
  const ProblemParams p{3, 2, 0, 1};
  auto f = sample(log_grid(1e-4, 1e4, 512), [&](double r) { return u0_value(r, p); }, p);
  CHECK(residual(f).max_abs() < 1e-9);
  for (auto& v : f.u) v *= 1.01;
  CHECK(residual(f).max_abs() > 1e-3);
}

TEST_CASE("power solution is reproduced by the integrator") {
  const ProblemParams p{3, 2, 0, 1};
  const auto e = compute_exponents(p);
  const double r0 = 1.0;
  const auto start = to_log_state(r0, u0_value(r0, p), -e.Theta * u0_value(r0, p) / r0, p);
  // inward, perturbations of U0 grow like r^{-0.79}, so keep to four decades
  IntegrateControls ctl;
  ctl.rel_tol = 1e-12;
  const auto run = integrate(start, std::log(1e-4), p, ctl);
  REQUIRE(run.outcome == Outcome::Completed);
  double worst = 0;
  for (std::size_t i = 0; i < run.profile.size(); ++i)
    worst = std::max(worst, std::abs(run.profile.u[i] / u0_value(run.profile.r[i], p) - 1.0));
  CHECK(worst < 1e-7);
}

TEST_CASE("fundamental solutions in linear mode") {
  const ProblemParams p{3, 2, 0, 0};
  IntegrateControls c;
  c.linear = true;
  // Φ+ grows towards the origin, Φ- towards infinity: integrate each in its growing direction
  const auto plus = integrate(to_log_state(1.0, 1.0, -1.0, p), std::log(1e-8), p, c);
  REQUIRE(plus.outcome == Outcome::Completed);
  for (std::size_t i = 0; i < plus.profile.size(); i += 50)
    CHECK(plus.profile.u[i] == doctest::Approx(phi_plus(plus.profile.r[i], p)).epsilon(1e-7));
  const ProblemParams q{4, 2, 4, 0};
  const auto minus = integrate(to_log_state(1.0, 1.0, 0.0, q), std::log(1e8), q, c);
  REQUIRE(minus.outcome == Outcome::Completed);
  for (std::size_t i = 0; i < minus.profile.size(); i += 50)
    CHECK(minus.profile.u[i] == doctest::Approx(phi_minus(minus.profile.r[i], q)).epsilon(1e-7));
}

TEST_CASE("collapse and escape events") {
  const ProblemParams p{3, 2, 0, 0};
  const double u = u0_value(1.0, p);
  const auto down = integrate(to_log_state(1.0, 0.1 * u, -5.0 * u, p), std::log(1e6), p);
  CHECK(down.outcome == Outcome::Collapse);
  CHECK(down.s_stop < std::log(1e6));
  const auto up = integrate(to_log_state(1.0, 2.0 * u, 5.0 * u, p), std::log(1e6), p);
  CHECK(up.outcome == Outcome::Escape);
}

// Case U: starting on c U0 with the slope that stays bounded (found by
// bisection between collapse and escape), the ratio to U0 relaxes to 1.
TEST_CASE("case U trajectories relax to the power solution") {
  const ProblemParams p{3, 2, 0, 1};
  const auto e = compute_exponents(p);
  const double s_end = std::log(1e4);
  for (double c : {0.5, 2.0}) {
    const double u = c * u0_value(1.0, p);
    auto run = [&](double slope) { return integrate(to_log_state(1.0, u, slope, p), s_end, p); };
    auto above = [&](const Trajectory& t) {
      if (t.outcome != Outcome::Completed) return t.outcome == Outcome::Escape;
      return t.profile.u.back() > u0_value(t.profile.r.back(), p);
    };
    double lo = -20.0 * u, hi = 20.0 * u;
    REQUIRE_FALSE(above(run(lo)));
    REQUIRE(above(run(hi)));
    for (int k = 0; k < 200 && hi - lo > 1e-15 * std::abs(lo); ++k) {
      const double mid = 0.5 * (lo + hi);
      (above(run(mid)) ? hi : lo) = mid;
    }
    const auto t = run(lo);
    // |u/U0 - 1| decays like r^{mu} with mu the stable root of
    // mu^2 - (2 Theta - N + 2) mu - (q - 1) ell = 0
    std::vector<double> r, dev;
    for (std::size_t i = 0; i < t.profile.size(); ++i)
      if (t.profile.r[i] >= 10.0 && t.profile.r[i] <= 100.0) {
        r.push_back(t.profile.r[i]);
        dev.push_back(std::abs(t.profile.u[i] / u0_value(t.profile.r[i], p) - 1.0));
      }
    REQUIRE(dev.size() > 10);
    CAPTURE(c);
    const double b = 2.0 * e.Theta - (p.N - 2.0);
    const double mu = (b - std::sqrt(b * b + 4.0 * (p.q - 1.0) * e.ell)) / 2.0;
    const double rate = std::log(dev.back() / dev.front()) / std::log(r.back() / r.front());
    CHECK(rate == doctest::Approx(mu).epsilon(0.05));
    bool monotone = true;
    for (std::size_t i = 1; i < dev.size(); ++i) monotone = monotone && dev[i] <= dev[i - 1] * (1 + 1e-9);
    CHECK(monotone);
  }
}

TEST_CASE("shooting the one-parameter family at (3,2,0,0)") {
  const ProblemParams p{3, 2, 0, 0};
  ShootSpec spec;
  const auto res = shoot_u_gamma_detailed(spec, p);
  const auto& f = res.profile;
  CHECK(f.provenance == "shoot");
  CHECK(f.size() == spec.points);
  CHECK(std::abs(f.r.front() * f.u.front() - 1.0) < 1e-2);
  CHECK(std::abs(f.u.back() / u0_value(f.r.back(), p) - 1.0) < 1e-2);
  CHECK(res.report.max_ratio_to_u0 <= 1.0 + 1e-10);
  CHECK(residual(f).max_abs_trimmed(0.05) <= 1e-6);
  const double c0 = apriori_constant(p);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(f.u[i] * std::pow(f.r[i], 2.0) <= c0);

  spec.gamma = 0.5;
  const auto half = shoot_u_gamma(spec, p);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(half.u[i] <= f.u[i] * (1 + 1e-10));
}

TEST_CASE("shooting reproduces the closed-form family") {
  for (double mu : {1.0, 1.3}) {
    const ProblemParams p{4, 2, 4, 0};
    ShootSpec spec;
    spec.gamma = example_family_gamma(mu, p);
    spec.points = 4096;
    const auto f = shoot_u_gamma(spec, p);
    std::vector<double> r;
    for (const auto& row : oracle()["family_m2"])
      if (row["mu"].get<double>() == mu) r.push_back(row["r"]);
    const auto g = resample(f, r);
    std::size_t k = 0;
    for (const auto& row : oracle()["family_m2"]) {
      if (row["mu"].get<double>() != mu) continue;
      CAPTURE(row["r"].get<double>());
      CHECK(rel_err(g.u[k] / row["u"].get<double>(), 1.0) < 1e-6);
      ++k;
    }
  }
}

TEST_CASE("M1 family through the Kelvin dual") {
  const ProblemParams p{4, 2, -6, 0};
  ShootSpec spec;
  spec.gamma = example_family_gamma(0.8, p);
  const auto f = construct_U_gamma(spec, p);
  CHECK(f.provenance == "shoot+kelvin");
  CHECK(f.params == p);
  CHECK(f.r.front() == doctest::Approx(1.0 / spec.r_outer));
  for (const auto& row : oracle()["family_m1"]) {
    if (row["mu"].get<double>() != 0.8) continue;
    const double r = row["r"];
    if (r < f.r.front() || r > f.r.back()) continue;
    CHECK(rel_err(resample(f, {r}).u[0] / row["u"].get<double>(), 1.0) < 1e-6);
  }
  CHECK_THROWS_AS(construct_U_gamma(spec, {3, 2, 0, 0}), ValidationError);
}

TEST_CASE("shooting at the Hardy threshold") {
  const ProblemParams p{3, 2, 0, 0.25};
  REQUIRE(classify(p).major == MajorCase::M2);
  ShootSpec spec;
  const auto f = shoot_u_gamma(spec, p);
  // γ Φ+ with Φ+ = r^{-1/2} log(1/r)
  CHECK(f.u.front() / phi_plus(f.r.front(), p) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(f.u.back() / u0_value(f.r.back(), p) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("no bracket outside M2") {
  ShootSpec spec;
  for (auto p : {ProblemParams{3, 2, -1.5, 0}, ProblemParams{3, 2, -2, 0}, ProblemParams{3, 2, -1.2, 0}}) {
    const auto scan = find_beta_bracket(spec, p);
    CHECK_FALSE(scan.found);
    CHECK_FALSE(scan.reason.empty());
    CHECK_THROWS_AS(shoot_u_gamma(spec, p), NumericalFailure);
  }
  CHECK_THROWS_AS(shoot_u_gamma(spec, {3, 2, 0, 1}), ValidationError);
  spec.gamma = -1.0;
  CHECK_THROWS_AS(shoot_u_gamma(spec, {3, 2, 0, 0}), ValidationError);
}
