#include "hardy/radial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include "hardy/barriers.hpp"
#include "hardy/errors.hpp"
#include "hardy/grid.hpp"

namespace hardy {

namespace ode = boost::numeric::odeint;

namespace {

using State = std::array<double, 2>;

double sgnpow(double x, double q) { return x >= 0 ? std::pow(x, q) : -std::pow(-x, q); }

// Error per step relative to the larger state component plus a moving floor.
struct ScaledChecker {
  using value_type = double;
  using algebra_type = ode::array_algebra;
  using operations_type = ode::default_operations;

  double rtol = 1e-10;
  const double* floor = nullptr;

  template <class S, class D, class E, class T>
  double error(algebra_type&, const S& x, const D&, E& err, T) const {
    const double sc = std::max(std::abs(x[0]), std::abs(x[1])) + *floor;
    if (!(sc > 0.0)) return 0.0;
    return std::max(std::abs(err[0]), std::abs(err[1])) / (rtol * sc);
  }
};

using Dopri = ode::runge_kutta_dopri5<State, double, State, double, ode::array_algebra>;
using Controlled = ode::controlled_runge_kutta<Dopri, ScaledChecker>;
using Dense = ode::dense_output_runge_kutta<Controlled>;

enum class Stop { None, Collapse, Escape };

struct Run {
  std::vector<double> s;
  std::vector<State> y;
  Stop stop = Stop::None;
  double s_stop = 0;
  State end{};
};

// Integrates rhs from (s0, y0) to s1, recording y at the requested nodes
// (ordered in the direction of integration). event(s, y) ends the run.
template <class Rhs, class Floor, class Event>
Run run_ode(Rhs&& rhs, State y0, double s0, double s1, const std::vector<double>& nodes, double rtol,
            double min_step, Floor&& floor_at, Event&& event) {
  Run out;
  out.end = y0;
  out.s_stop = s0;
  if (s0 == s1) {
    for (double sn : nodes)
      if (sn == s0) out.s.push_back(sn), out.y.push_back(y0);
    return out;
  }
  const double dir = s1 > s0 ? 1.0 : -1.0;
  double floor = floor_at(s0);
  Dense stepper{Controlled(ScaledChecker{rtol, &floor})};
  auto sys = [&](const State& x, State& dx, double s) { rhs(x, dx, s); };
  stepper.initialize(y0, s0, dir * std::min(1e-3, std::abs(s1 - s0)));

  std::size_t next = 0;
  while (next < nodes.size() && dir * (nodes[next] - s0) < 0) ++next;
  try {
    while (dir * (stepper.current_time() - s1) < 0) {
      floor = floor_at(stepper.current_time());
      const double t_prev = stepper.current_time();
      stepper.do_step(sys);
      const double t_now = stepper.current_time();
      if (std::abs(t_now - t_prev) < min_step && dir * (t_now - s1) < 0)
        throw NumericalFailure("integration_failure", "step size underflow", {{"s", t_now}});
      const double t_cap = dir * (t_now - s1) > 0 ? s1 : t_now;
      State y_cap;
      stepper.calc_state(t_cap, y_cap);
      const Stop ev = event(t_cap, y_cap);
      double t_limit = t_cap;
      if (ev != Stop::None) {
        // locate the first crossing inside the step
        double a = t_prev, b = t_cap;
        for (int k = 0; k < 60; ++k) {
          const double mid = 0.5 * (a + b);
          State ym;
          stepper.calc_state(mid, ym);
          (event(mid, ym) != Stop::None ? b : a) = mid;
        }
        t_limit = b;
      }
      while (next < nodes.size() && dir * (nodes[next] - t_limit) <= 0 &&
             !(ev != Stop::None && nodes[next] == t_limit)) {
        State yn;
        stepper.calc_state(nodes[next], yn);
        out.s.push_back(nodes[next]);
        out.y.push_back(yn);
        ++next;
      }
      if (ev != Stop::None) {
        out.stop = ev;
        out.s_stop = t_limit;
        stepper.calc_state(t_limit, out.end);
        return out;
      }
      out.end = y_cap;
      out.s_stop = t_cap;
    }
  } catch (const ode::step_adjustment_error& e) {
    throw NumericalFailure("integration_failure", e.what(), {{"s", stepper.current_time()}});
  }
  return out;
}

auto no_floor = [](double) { return 0.0; };

struct LogSystem {
  double D;      // λ_H - λ
  double kappa;  // weight exponent of the nonlinearity
  double q;
  bool linear;

  double nonlinear(double s, double phi) const { return linear ? 0.0 : std::exp(kappa * s) * sgnpow(phi, q); }
};

// φ-envelope used by the escape guard: U_0 when ℓ > 0, else C₀ r^{-Θ}.
double envelope_coeff(const ProblemParams& p, const CriticalExponents& e) {
  return e.ell > 0 ? std::pow(e.ell, 1.0 / (p.q - 1.0)) : apriori_constant(p);
}

std::vector<double> sorted_nodes(double s0, double s1, std::size_t n) {
  auto v = linspace(std::min(s0, s1), std::max(s0, s1), n);
  if (s1 < s0) std::reverse(v.begin(), v.end());
  return v;
}

}  // namespace

double ResidualSamples::max_abs() const {
  double m = 0;
  for (double v : value) m = std::max(m, std::abs(v));
  return m;
}

double ResidualSamples::max_abs_trimmed(double fraction) const {
  const auto skip = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(value.size())));
  double m = 0;
  for (std::size_t i = skip; i + skip < value.size(); ++i) m = std::max(m, std::abs(value[i]));
  return m;
}

ResidualSamples residual(const RadialFunction& f, const ResidualOptions& opt) {
  if (f.size() < 5) throw ValidationError("residual needs at least 5 nodes");
  f.check();
  const auto& p = f.params;
  const auto der = log_derivatives(f.r, f.u);
  ResidualSamples out;
  for (std::size_t i = der.first; i <= der.last; ++i) {
    const double u = f.u[i];
    const double uss = der.d2[i];
    const double drift = (p.N - 2.0) * der.d1[i];
    const double pot = p.lambda * u;
    const double nl = opt.linear ? 0.0 : std::pow(f.r[i], p.theta + 2.0) * std::pow(u, p.q);
    const double scale = std::max({std::abs(u), std::abs(uss), std::abs(drift), std::abs(pot), nl});
    out.r.push_back(f.r[i]);
    out.value.push_back((uss + drift + pot - nl) / scale);
  }
  return out;
}

double log_substitute(const ProblemParams& p) {
  validate(p);
  return compute_exponents(p).kappa;
}

LogState to_log_state(double r, double u, double du_dr, const ProblemParams& p) {
  if (!(r > 0.0)) throw ValidationError("r must be positive");
  const double m = (p.N - 2.0) / 2.0;
  const double rm = std::pow(r, m);
  return {std::log(r), rm * u, rm * (m * u + r * du_dr)};
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Completed: return "completed";
    case Outcome::Collapse: return "collapse";
    case Outcome::Escape: return "escape";
  }
  return "?";
}

Trajectory integrate(const LogState& start, double s_end, const ProblemParams& p, const IntegrateControls& c) {
  validate(p);
  if (!(start.phi > 0.0)) throw ValidationError("integration needs phi > 0 at the start");
  if (c.samples < 2) throw ValidationError("need at least 2 output samples");
  if (!(c.rel_tol > 0.0)) throw ValidationError("rel_tol must be positive");
  const auto e = compute_exponents(p);
  const LogSystem sys{e.disc, e.kappa, p.q, c.linear};
  const double m = e.half_dim;
  const bool guard = !c.linear;
  const double env = guard ? envelope_coeff(p, e) : 0.0;

  auto rhs = [&](const State& x, State& dx, double s) {
    dx[0] = x[1];
    dx[1] = sys.D * x[0] + sys.nonlinear(s, x[0]);
  };
  auto event = [&](double s, const State& x) {
    if (x[0] <= 0.0) return Stop::Collapse;
    if (guard && x[0] > c.escape_factor * env * std::exp((m - e.Theta) * s)) return Stop::Escape;
    return Stop::None;
  };
  const auto nodes = sorted_nodes(start.s, s_end, c.samples);
  const auto run = run_ode(rhs, State{start.phi, start.dphi}, start.s, s_end, nodes, c.rel_tol, c.min_step,
                           no_floor, event);

  Trajectory t;
  t.profile.params = p;
  t.profile.provenance = "integrate";
  for (std::size_t i = 0; i < run.s.size(); ++i) {
    t.profile.r.push_back(std::exp(run.s[i]));
    t.profile.u.push_back(run.y[i][0] * std::exp(-m * run.s[i]));
  }
  if (s_end < start.s) {
    std::reverse(t.profile.r.begin(), t.profile.r.end());
    std::reverse(t.profile.u.begin(), t.profile.u.end());
  }
  t.outcome = run.stop == Stop::Collapse ? Outcome::Collapse
              : run.stop == Stop::Escape ? Outcome::Escape
                                         : Outcome::Completed;
  t.s_stop = run.s_stop;
  return t;
}

namespace {

// Shooting in s = log r. Near zero the state is split as φ = φ_lin + v with
// φ_lin = γe^{-ds} + βe^{ds} (γ(-s) + β at the Hardy threshold), so β
// enters exactly. Far out the state is z = ψ/ψ* - 1 with ψ = r^Θ u.
class Shooter {
 public:
  Shooter(const ShootSpec& spec, const ProblemParams& p) : spec_(spec), p_(p), e_(compute_exponents(p)) {
    validate(p);
    if (!(spec.gamma > 0.0)) throw ValidationError("gamma must be positive");
    if (!(spec.r_inner > 0.0 && spec.r_inner < spec.r_outer)) throw ValidationError("need 0 < r_inner < r_outer");
    if (!(spec.tol_match > 0.0)) throw ValidationError("tol_match must be positive");
    if (spec.points < 5) throw ValidationError("need at least 5 output points");
    if (e_.disc < 0.0) throw ValidationError("shooting ansatz needs lambda <= lambda_H");
    d_ = std::sqrt(e_.disc);
    m_ = e_.half_dim;
    s_in_ = std::log(spec.r_inner);
    s_out_ = std::log(spec.r_outer);
    env_ = envelope_coeff(p, e_);
    sys_ = {e_.disc, e_.kappa, p.q, false};
    nodes_ = linspace(s_in_, s_out_, spec.points);
    if (e_.ell > 0.0 && e_.Theta > *e_.p_plus) {
      // junction where γΦ+ meets U_0, snapped to an output node
      const double psi_star = std::pow(e_.ell, 1.0 / (p.q - 1.0));
      const double guess = std::log(psi_star / spec.gamma) / (e_.Theta - *e_.p_plus);
      const double lo = s_in_ + 2.0, hi = s_out_ - 2.0;
      const double h = nodes_[1] - nodes_[0];
      const double target = lo < hi ? std::clamp(guess, lo, hi) : 0.5 * (s_in_ + s_out_);
      const auto j = static_cast<std::size_t>(std::lround((target - s_in_) / h));
      s_m_ = nodes_[std::min(j, nodes_.size() - 1)];
    } else {
      s_m_ = 0.5 * (s_in_ + s_out_);
    }
  }

  BracketScan scan() const {
    BracketScan b;
    const double omega = (p_.q - 1.0) * (e_.Theta - *e_.p_plus);
    b.ansatz_ratio = std::pow(spec_.gamma, p_.q - 1.0) * std::exp(omega * s_in_) *
                     (d_ == 0.0 ? std::pow(std::abs(s_in_), p_.q - 1.0) : 1.0);
    if (!(omega > 0.0)) {
      b.reason = "no bracket: nonlinear term is not subdominant near zero (Theta <= p_plus)";
      return b;
    }
    if (std::abs(e_.Theta - m_) <= kBoundaryTol * std::max(1.0, m_)) {
      b.reason = "unsupported: q at the critical exponent q_crit";
      return b;
    }
    if (!(b.ansatz_ratio <= 1e-6)) {
      b.reason = "no bracket: r_inner too large for the near-zero ansatz";
      return b;
    }
    for (int k = 8; k >= -8; --k) b.betas.push_back(-std::pow(10.0, k));
    b.betas.push_back(0.0);
    for (int k = -8; k <= 8; ++k) b.betas.push_back(std::pow(10.0, k));
    for (double beta : b.betas) {
      if (!admissible(beta)) {
        b.classes.emplace_back("inadmissible");
        continue;
      }
      b.classes.emplace_back(escapes(beta) ? "escape" : "collapse");
    }
    for (std::size_t i = 0; i + 1 < b.betas.size(); ++i) {
      if (b.classes[i] == "collapse" && b.classes[i + 1] == "escape") {
        b.found = true;
        b.beta_lo = b.betas[i];
        b.beta_hi = b.betas[i + 1];
        b.reason = "bracket found";
        return b;
      }
    }
    b.reason = "no bracket: every admissible trajectory collapses or every one escapes";
    return b;
  }

  ShootResult shoot() const {
    ShootResult res;
    auto& rep = res.report;
    rep.scan = scan();
    if (!rep.scan.found)
      throw NumericalFailure("bracket_not_found", rep.scan.reason,
                             {{"params", to_json(p_)}, {"scan", to_json(rep.scan)}});

    double lo = rep.scan.beta_lo, hi = rep.scan.beta_hi;
    for (rep.bisections = 0; rep.bisections < 200; ++rep.bisections) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      (escapes(mid) ? hi : lo) = mid;
    }
    double beta = lo;

    const double psi_star = std::pow(e_.ell, 1.0 / (p_.q - 1.0));
    const double s_m = s_m_;
    rep.s_match = s_m;

    const State in0 = inner_at(beta, s_m);
    const double u0_phi = psi_star * std::exp(-(e_.Theta - m_) * s_m);
    const double z_in = in0[0] / u0_phi - 1.0;

    double A = 0.0;
    if (std::abs(z_in) > 1e-14) {
      const double sg = z_in > 0 ? 1.0 : -1.0;
      auto f = [&](double la) { return outer_at(sg * std::exp(la), s_m)[0] - in0[0]; };
      // the stable mode grows like e^{|μ_s|(s_out - s)} on the way in
      const double bq = p_.N - 2.0 - 2.0 * e_.Theta;
      const double mu_s = (-bq - std::sqrt(bq * bq + 4.0 * (p_.q - 1.0) * e_.ell)) / 2.0;
      double a = std::max(std::log(1e-300), mu_s * (s_out_ - s_m) + std::log(1e-8)), b = std::log(0.5);
      const double fa = f(a), fb = f(b);
      if (fa * fb > 0.0)
        throw NumericalFailure("matching_failed", "far-field amplitude could not be bracketed",
                               {{"z_junction", z_in}, {"beta", beta}});
      boost::uintmax_t it = 100;
      const auto [ra, rb] = boost::math::tools::toms748_solve(
          f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(40), it);
      A = sg * std::exp(0.5 * (ra + rb));
    }

    auto mismatch = [&](double bt, double am) {
      const State i = inner_at(bt, s_m);
      const State o = outer_at(am, s_m);
      return std::array<double, 2>{i[0] - o[0], i[1] - o[1]};
    };
    auto F = mismatch(beta, A);
    auto size = [&](const std::array<double, 2>& v) { return std::max(std::abs(v[0]), std::abs(v[1])) / std::abs(in0[0]); };
    for (rep.newton_iterations = 0; rep.newton_iterations < 12 && size(F) > 1e-13; ++rep.newton_iterations) {
      const double hb = 1e-7 * std::max(1.0, std::abs(beta));
      const double ha = 1e-7 * std::max(std::abs(A), 1e-300);
      const auto Fb = mismatch(beta + hb, A);
      const auto Fa = mismatch(beta, A + ha);
      const double j00 = (Fb[0] - F[0]) / hb, j10 = (Fb[1] - F[1]) / hb;
      const double j01 = (Fa[0] - F[0]) / ha, j11 = (Fa[1] - F[1]) / ha;
      const double det = j00 * j11 - j01 * j10;
      if (det == 0.0 || !std::isfinite(det)) break;
      const double db = -(j11 * F[0] - j01 * F[1]) / det;
      const double da = -(-j10 * F[0] + j00 * F[1]) / det;
      bool improved = false;
      for (double damp = 1.0; damp > 1e-3; damp *= 0.5) {
        const auto Ft = mismatch(beta + damp * db, A + damp * da);
        if (size(Ft) < size(F)) {
          beta += damp * db;
          A += damp * da;
          F = Ft;
          improved = true;
          break;
        }
      }
      if (!improved) break;
    }
    rep.beta = beta;
    rep.far_amplitude = A;
    rep.junction_mismatch = size(F);
    rep.match_error = std::abs(A);
    if (!(rep.match_error <= spec_.tol_match))
      throw NumericalFailure("tolerance_not_met", "far-field mismatch exceeds tol_match",
                             {{"match_error", rep.match_error}, {"tol_match", spec_.tol_match}, {"beta", beta}});

    res.profile = assemble(beta, A, s_m);
    rep.max_ratio_to_u0 = 0.0;
    for (std::size_t i = 0; i < res.profile.size(); ++i)
      rep.max_ratio_to_u0 = std::max(rep.max_ratio_to_u0, res.profile.u[i] / u0_value(res.profile.r[i], p_));
    return res;
  }

 private:
  State lin(double beta, double s) const {
    if (d_ == 0.0) return {-spec_.gamma * s + beta, -spec_.gamma};
    const double em = std::exp(-d_ * s), ep = std::exp(d_ * s);
    return {spec_.gamma * em + beta * ep, d_ * (beta * ep - spec_.gamma * em)};
  }

  bool admissible(double beta) const {
    // Φ-/Φ+ = 1/|s| decays only logarithmically here; positivity of the linear
    // part with γΦ+ dominant is all the exact split form needs
    if (d_ == 0.0) return std::abs(beta) <= 0.5 * spec_.gamma * std::abs(s_in_);
    return std::abs(beta) * std::exp(d_ * s_in_) <= 0.01 * spec_.gamma * std::exp(-d_ * s_in_);
  }

  double env_phi(double s) const { return env_ * std::exp((m_ - e_.Theta) * s); }

  // Split-form run from s_in to s1, returning (v, v') samples at the nodes.
  Run inner_run(double beta, double s1, const std::vector<double>& nodes, bool guarded) const {
    auto rhs = [&](const State& x, State& dx, double s) {
      const double phi = lin(beta, s)[0] + x[0];
      dx[0] = x[1];
      dx[1] = sys_.D * x[0] + sys_.nonlinear(s, phi);
    };
    auto floor = [&](double s) { return std::abs(lin(beta, s)[0]) + std::abs(lin(beta, s)[1]); };
    auto event = [&](double s, const State& x) {
      const double phi = lin(beta, s)[0] + x[0];
      if (phi <= 0.0) return Stop::Collapse;
      if (guarded && phi > 10.0 * env_phi(s)) return Stop::Escape;
      return Stop::None;
    };
    return run_ode(rhs, State{0.0, 0.0}, s_in_, s1, nodes, 1e-12, 1e-14, floor, event);
  }

  State inner_at(double beta, double s1) const {
    const auto r = inner_run(beta, s1, {}, false);
    if (r.stop != Stop::None)
      throw NumericalFailure("matching_failed", "inner trajectory collapsed before the junction", {{"beta", beta}});
    const State l = lin(beta, s1);
    return {l[0] + r.end[0], l[1] + r.end[1]};
  }

  // Classification run: split form up to the junction guess, then plain φ.
  bool escapes(double beta) const {
    const double s_mid = s_m_;
    const auto a = inner_run(beta, s_mid, {}, true);
    if (a.stop == Stop::Collapse) return false;
    if (a.stop == Stop::Escape) return true;
    const State l = lin(beta, s_mid);
    const State y{l[0] + a.end[0], l[1] + a.end[1]};
    auto rhs = [&](const State& x, State& dx, double s) {
      dx[0] = x[1];
      dx[1] = sys_.D * x[0] + sys_.nonlinear(s, x[0]);
    };
    auto event = [&](double s, const State& x) {
      if (x[0] <= 0.0) return Stop::Collapse;
      if (x[0] > 10.0 * env_phi(s)) return Stop::Escape;
      return Stop::None;
    };
    const auto b = run_ode(rhs, y, s_mid, s_out_, {}, 1e-12, 1e-14, no_floor, event);
    if (b.stop == Stop::Collapse) return false;
    if (b.stop == Stop::Escape) return true;
    return b.end[0] > env_phi(s_out_);
  }

  Run outer_run(double A, double s1, const std::vector<double>& nodes) const {
    const double q = p_.q;
    const double b = p_.N - 2.0 - 2.0 * e_.Theta;
    const double ell = e_.ell;
    const double mu_s = (-b - std::sqrt(b * b + 4.0 * (q - 1.0) * ell)) / 2.0;
    auto rhs = [&](const State& x, State& dx, double) {
      // w - w^q with w = 1 + z, free of cancellation for small z
      const double z = x[0];
      const double g = z > -1.0 ? z - std::expm1(q * std::log1p(z)) : (1.0 + z) - sgnpow(1.0 + z, q);
      dx[0] = x[1];
      dx[1] = -b * x[1] - ell * g;
    };
    auto floor = [&](double) { return 1e-3 * std::abs(A); };
    auto event = [](double, const State& x) {
      if (x[0] <= -1.0) return Stop::Collapse;
      if (x[0] >= 9.0) return Stop::Escape;
      return Stop::None;
    };
    return run_ode(rhs, State{A, mu_s * A}, s_out_, s1, nodes, 1e-12, 1e-14, floor, event);
  }

  State outer_at(double A, double s1) const {
    const auto r = outer_run(A, s1, {});
    const double psi_star = std::pow(e_.ell, 1.0 / (p_.q - 1.0));
    const double g = e_.Theta - m_;
    const double ex = std::exp(-g * s1);
    if (r.stop == Stop::Collapse) return {-psi_star * ex, 0.0};
    if (r.stop == Stop::Escape) return {10.0 * psi_star * ex, 0.0};
    return {ex * psi_star * (1.0 + r.end[0]), ex * psi_star * (r.end[1] - g * (1.0 + r.end[0]))};
  }

  RadialFunction assemble(double beta, double A, double s_m) const {
    std::vector<double> in_nodes, out_nodes;
    for (double s : nodes_) (s <= s_m ? in_nodes : out_nodes).push_back(s);
    std::reverse(out_nodes.begin(), out_nodes.end());
    const auto a = inner_run(beta, s_m, in_nodes, false);
    const auto b = outer_run(A, out_nodes.empty() ? s_m : out_nodes.back(), out_nodes);
    if (a.s.size() != in_nodes.size() || b.s.size() != out_nodes.size())
      throw NumericalFailure("matching_failed", "matched trajectory left the admissible region",
                             {{"beta", beta}, {"far_amplitude", A}, {"inner_stop", a.s_stop}, {"outer_stop", b.s_stop}});
    const double psi_star = std::pow(e_.ell, 1.0 / (p_.q - 1.0));
    RadialFunction f;
    f.params = p_;
    f.provenance = "shoot";
    for (std::size_t i = 0; i < a.s.size(); ++i) {
      const double s = a.s[i];
      f.r.push_back(std::exp(s));
      f.u.push_back((lin(beta, s)[0] + a.y[i][0]) * std::exp(-m_ * s));
    }
    for (std::size_t i = b.s.size(); i-- > 0;) {
      const double s = b.s[i];
      f.r.push_back(std::exp(s));
      f.u.push_back(psi_star * (1.0 + b.y[i][0]) * std::exp(-e_.Theta * s));
    }
    f.check();
    return f;
  }

  ShootSpec spec_;
  ProblemParams p_;
  CriticalExponents e_;
  LogSystem sys_{};
  double d_ = 0, m_ = 0, s_in_ = 0, s_out_ = 0, env_ = 0, s_m_ = 0;
  std::vector<double> nodes_;
};

}  // namespace

BracketScan find_beta_bracket(const ShootSpec& spec, const ProblemParams& p) { return Shooter(spec, p).scan(); }

ShootResult shoot_u_gamma_detailed(const ShootSpec& spec, const ProblemParams& p) {
  return Shooter(spec, p).shoot();
}

RadialFunction shoot_u_gamma(const ShootSpec& spec, const ProblemParams& p) {
  return shoot_u_gamma_detailed(spec, p).profile;
}

ShootResult construct_U_gamma_detailed(const ShootSpec& spec, const ProblemParams& p) {
  validate(p);
  if (classify(p).major != MajorCase::M1) throw ValidationError("construct_U_gamma needs Case M1 parameters");
  if (!(spec.r_inner > 0.0 && spec.r_inner < spec.r_outer)) throw ValidationError("need 0 < r_inner < r_outer");
  ShootSpec dual = spec;
  dual.r_inner = 1.0 / spec.r_outer;
  dual.r_outer = 1.0 / spec.r_inner;
  auto res = shoot_u_gamma_detailed(dual, kelvin_dual_params(p));
  res.profile = kelvin_transform(res.profile);
  res.profile.provenance = "shoot+kelvin";
  return res;
}

RadialFunction construct_U_gamma(const ShootSpec& spec, const ProblemParams& p) {
  return construct_U_gamma_detailed(spec, p).profile;
}

nlohmann::json to_json(const BracketScan& b) {
  return {{"found", b.found},   {"reason", b.reason},   {"beta_lo", b.beta_lo}, {"beta_hi", b.beta_hi},
          {"ansatz_ratio", b.ansatz_ratio}, {"betas", b.betas}, {"classes", b.classes}};
}

nlohmann::json to_json(const ShootReport& r) {
  return {{"beta", r.beta},
          {"far_amplitude", r.far_amplitude},
          {"s_match", r.s_match},
          {"bisections", r.bisections},
          {"newton_iterations", r.newton_iterations},
          {"junction_mismatch", r.junction_mismatch},
          {"match_error", r.match_error},
          {"max_ratio_to_u0", r.max_ratio_to_u0},
          {"scan", to_json(r.scan)}};
}

}  // namespace hardy
