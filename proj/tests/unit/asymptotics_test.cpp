#include <doctest.h>

#include "hardy/asymptotics.hpp"
#include "hardy/errors.hpp"
#include "hardy/exact.hpp"
#include "hardy/grid.hpp"
#include "hardy/radial.hpp"
#include "support.hpp"

using namespace hardy;
using testing::oracle;

namespace {

RadialFunction synthetic(double c, double p, double s, End end, const ProblemParams& params) {
  const auto grid = end == End::Zero ? log_grid(1e-12, 1e-2, 400) : log_grid(1e2, 1e12, 400);
  return sample(grid, [&](double r) {
    const double L = end == End::Zero ? std::log(1.0 / r) : std::log(r);
    return c * std::pow(r, -p) * std::pow(L, s);
  }, params);
}

}  // namespace

TEST_CASE("fit recovers pure profiles") {
  const ProblemParams any{3, 2, 0, 0};
  for (End end : {End::Zero, End::Infinity}) {
    for (auto [c, p, s] : {std::tuple{2.0, 2.0, 0.0}, {1.0, 0.5, 1.0}, {6.0, 0.5, -2.0}, {0.3, -1.0, -1.0}}) {
      const auto fit = fit_profile(synthetic(c, p, s, end, any), end);
      CAPTURE(p);
      CAPTURE(s);
      CHECK(fit.profile.p == doctest::Approx(p).epsilon(1e-9));
      CHECK(fit.profile.s == doctest::Approx(s).epsilon(1e-8));
      CHECK(*fit.profile.c == doctest::Approx(c).epsilon(1e-8));
    }
  }
}

TEST_CASE("fit window validation") {
  const ProblemParams p{3, 2, 0, 1};
  const auto f = sample(log_grid(1e-2, 1e2, 100), [&](double r) { return u0_value(r, p); }, p);
  CHECK_THROWS_AS(fit_profile(f, End::Zero, {3.0, 0.5}), ValidationError);  // window crosses r = 1
  CHECK_THROWS_AS(fit_profile(f, End::Zero, {10.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(fit_profile(f, End::Zero, {-1.0, 0.0}), ValidationError);
}

TEST_CASE("catalogue rows") {
  const ProblemParams m2{3, 2, 0, 0};
  const auto u0 = expected_profile(m2, Member::U0, End::Zero);
  CHECK(u0.p == 2.0);
  CHECK(*u0.c == doctest::Approx(2.0));
  const auto g = expected_profile(m2, Member::Gamma, End::Zero, 3.0);
  CHECK(g.p == doctest::Approx(1.0));
  CHECK(*g.c == 3.0);
  CHECK(expected_profile(m2, Member::Gamma, End::Infinity).source == "U0");
  const auto reg = expected_profile(m2, Member::Regular, End::Zero);
  CHECK(reg.p == doctest::Approx(0.0));
  CHECK_FALSE(reg.c.has_value());
  CHECK_THROWS_AS(expected_profile(m2, Member::NCaseLocal, End::Zero), ValidationError);

  const auto at_h = expected_profile({3, 2, 0, 0.25}, Member::Gamma, End::Zero);
  CHECK(at_h.p == 0.5);
  CHECK(at_h.s == 1.0);

  const auto& k = oracle()["ncase_constants"];
  const auto lower = expected_profile({3, 2, -2, 0}, Member::NCaseLocal, End::Zero);
  CHECK(lower.s == -1.0);
  CHECK(*lower.c == doctest::Approx(k["lower_3_2_-2_0"].get<double>()));
  CHECK_FALSE(expected_profile({3, 2, -2, 0}, Member::NCaseLocal, End::Infinity).c.has_value());
  const auto upper = expected_profile({3, 2, -1, 0}, Member::NCaseLocal, End::Infinity);
  CHECK(upper.p == doctest::Approx(1.0));
  CHECK(upper.s == -1.0);
  const auto dbl = expected_profile({3, 2, -1.5, 0.25}, Member::NCaseLocal, End::Zero);
  CHECK(dbl.p == 0.5);
  CHECK(dbl.s == -2.0);
  CHECK(*dbl.c == doctest::Approx(k["double_3_2_-1.5_0.25"].get<double>()));
  CHECK(*expected_profile({4, 3, 0, 1}, Member::NCaseLocal, End::Infinity).c ==
        doctest::Approx(k["double_4_3_0_1"].get<double>()));
  CHECK(expected_profile({3, 2, -1.5, 0}, Member::NCaseLocal, End::Zero).source == "N_interior");
}

TEST_CASE("Kelvin consistency of the catalogue") {
  // the zero-end row of p is the infinity-end row of the dual with p -> N-2-p
  for (auto p : {ProblemParams{3, 2, 0, 0}, ProblemParams{4, 2, 4, 0}, ProblemParams{5, 3, 5, 0.5}}) {
    const auto d = kelvin_dual_params(p);
    for (Member m : {Member::U0, Member::Gamma}) {
      for (End end : {End::Zero, End::Infinity}) {
        const auto a = expected_profile(p, m, end);
        const auto b = expected_profile(d, m, end == End::Zero ? End::Infinity : End::Zero);
        const auto img = kelvin_image(a, p.N);
        CHECK(img.end == b.end);
        CHECK(img.p == doctest::Approx(b.p).epsilon(1e-14));
        CHECK(img.s == b.s);
        CHECK(img.c.has_value() == b.c.has_value());
        if (img.c) CHECK(*img.c == doctest::Approx(*b.c).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("closed forms pass at tight tolerance") {
  const ProblemParams u{3, 2, 0, 1};
  const auto f = sample(log_grid(1e-8, 1e8, 1024), [&](double r) { return u0_value(r, u); }, u);
  for (End end : {End::Zero, End::Infinity})
    CHECK(verify_profile(f, expected_profile(u, Member::U0, end), 1e-6, 1e-6, 1e-6).passed);

  const ProblemParams m2{4, 2, 4, 0};
  const auto g = sample(log_grid(1e-10, 1e10, 2048), [&](double r) { return example_family_m2(1.3, r, m2); }, m2);
  const auto zero = verify_profile(g, expected_profile(m2, Member::Gamma, End::Zero, example_family_gamma(1.3, m2)),
                                   1e-6, 1e-6, 1e-6);
  CHECK(zero.passed);
  CHECK(zero.caveats.empty());

  const ProblemParams h{3, 2, 0, 0.25};
  const auto phi = sample(log_grid(1e-12, 1e-2, 1024), [&](double r) { return phi_plus(r, h); }, h);
  const auto chk = verify_profile(phi, expected_profile(h, Member::Gamma, End::Zero), 1e-6, 1e-6, 1e-6);
  CHECK(chk.passed);
  CHECK(chk.caveats.size() == 1);  // slow-log note on an s != 0 row
}

TEST_CASE("mismatch is reported") {
  const ProblemParams u{3, 2, 0, 1};
  const auto f = sample(log_grid(1e-8, 1e8, 1024), [&](double r) { return 1.5 * u0_value(r, u); }, u);
  const auto chk = verify_profile(f, expected_profile(u, Member::U0, End::Zero), 1e-6, 1e-6, 1e-6);
  CHECK(chk.p_ok);
  CHECK_FALSE(chk.c_ok);
  CHECK_FALSE(chk.passed);
  CHECK(*chk.dc == doctest::Approx(0.5));
}

TEST_CASE("shooting output at both ends") {
  const ProblemParams p{3, 2, 0, 0};
  ShootSpec spec;
  spec.r_outer = 1e12;
  spec.points = 1024;
  const auto f = shoot_u_gamma(spec, p);
  CHECK(verify_profile(f, expected_profile(p, Member::Gamma, End::Zero), 0.01, 0.05, 0.1).passed);
  CHECK(verify_profile(f, expected_profile(p, Member::Gamma, End::Infinity), 0.01, 0.05, 0.1).passed);
}
