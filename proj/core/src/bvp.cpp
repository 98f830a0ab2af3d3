#include "hardy/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "hardy/errors.hpp"
#include "hardy/grid.hpp"

namespace hardy {

namespace {

// In-place Thomas solve of a tridiagonal system; sub[0] and sup[n-1] unused.
void thomas(std::vector<double>& sub, std::vector<double>& diag, std::vector<double>& sup, std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

struct Discretization {
  const std::vector<double>& s;
  std::vector<double> weight;  // e^{κ s}
  double D, q;
  std::vector<char> compact;

  Discretization(const ProblemParams& p, const std::vector<double>& grid) : s(grid) {
    const auto e = compute_exponents(p);
    D = e.disc;
    q = p.q;
    weight.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) weight[i] = std::exp(e.kappa * s[i]);
    compact.assign(s.size(), 0);
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
      const double hl = s[i] - s[i - 1], hr = s[i + 1] - s[i];
      compact[i] = std::abs(hl - hr) <= 1e-9 * hr;
    }
  }

  // weight·φ^{q-1} first: φ^q alone underflows on very deep annuli
  double f(std::size_t i, double phi) const { return (D + weight[i] * std::pow(phi, q - 1.0)) * phi; }
  double df(std::size_t i, double phi) const { return D + q * weight[i] * std::pow(phi, q - 1.0); }

  // Residual at interior nodes and its normalized sup.
  double residual(const std::vector<double>& phi, std::vector<double>& res) const {
    const std::size_t n = s.size();
    res.assign(n, 0.0);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double hl = s[i] - s[i - 1], hr = s[i + 1] - s[i];
      double lap, src, scale;
      if (compact[i]) {
        const double h2 = hl * hr;
        lap = (phi[i + 1] - 2.0 * phi[i] + phi[i - 1]) / h2;
        const double fm = f(i - 1, phi[i - 1]), f0 = f(i, phi[i]), fp = f(i + 1, phi[i + 1]);
        src = (fp + 4.0 * f0 + fm) / 6.0;
        scale = (std::abs(phi[i + 1]) + 2.0 * std::abs(phi[i]) + std::abs(phi[i - 1])) / h2 +
                (std::abs(fp) + 4.0 * std::abs(f0) + std::abs(fm)) / 6.0;
      } else {
        const double a = 2.0 / (hl * (hl + hr)), c = 2.0 / (hr * (hl + hr)), b = a + c;
        lap = a * phi[i - 1] - b * phi[i] + c * phi[i + 1];
        src = f(i, phi[i]);
        scale = a * std::abs(phi[i - 1]) + b * std::abs(phi[i]) + c * std::abs(phi[i + 1]) + std::abs(src);
      }
      res[i] = lap - src;
      if (scale > 0.0) worst = std::max(worst, std::abs(res[i]) / scale);
    }
    return worst;
  }

  void jacobian(const std::vector<double>& phi, std::vector<double>& sub, std::vector<double>& diag,
                std::vector<double>& sup) const {
    const std::size_t m = s.size() - 2;
    sub.assign(m, 0.0);
    diag.assign(m, 0.0);
    sup.assign(m, 0.0);
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
      const std::size_t k = i - 1;
      const double hl = s[i] - s[i - 1], hr = s[i + 1] - s[i];
      if (compact[i]) {
        const double h2 = hl * hr;
        diag[k] = -2.0 / h2 - 4.0 * df(i, phi[i]) / 6.0;
        if (k > 0) sub[k] = 1.0 / h2 - df(i - 1, phi[i - 1]) / 6.0;
        if (k + 1 < m) sup[k] = 1.0 / h2 - df(i + 1, phi[i + 1]) / 6.0;
      } else {
        const double a = 2.0 / (hl * (hl + hr)), c = 2.0 / (hr * (hl + hr));
        diag[k] = -(a + c) - df(i, phi[i]);
        if (k > 0) sub[k] = a;
        if (k + 1 < m) sup[k] = c;
      }
    }
  }
};

}  // namespace

GridSolution solve_on_grid(const ProblemParams& p, std::vector<double> s, std::vector<double> phi,
                           const NewtonOptions& opt) {
  validate(p);
  const std::size_t n = s.size();
  if (n < 3 || phi.size() != n) throw ValidationError("grid and initial iterate must agree and have >= 3 nodes");
  for (std::size_t i = 1; i < n; ++i)
    if (!(s[i] > s[i - 1])) throw ValidationError("grid must be strictly increasing");
  if (phi.front() < 0.0 || phi.back() < 0.0) throw ValidationError("boundary data must be non-negative");
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (!(phi[i] > 0.0)) throw ValidationError("initial iterate must be positive inside the annulus");

  const Discretization disc(p, s);
  std::vector<double> res, sub, diag, sup, trial, res_trial;
  GridSolution out;
  double nres = disc.residual(phi, res);
  for (out.iterations = 0; out.iterations < opt.max_iterations; ++out.iterations) {
    if (nres <= 1e-14) break;
    disc.jacobian(phi, sub, diag, sup);
    std::vector<double> delta(res.begin() + 1, res.end() - 1);
    for (double& v : delta) v = -v;
    thomas(sub, diag, sup, delta);

    double damp = 1.0;
    double step = 0.0;
    for (;; damp *= 0.5) {
      if (damp < 1e-12)
        throw NumericalFailure("newton_failed", "damped Newton could not reduce the residual",
                               {{"residual", nres}, {"iteration", out.iterations}});
      trial = phi;
      bool positive = true;
      for (std::size_t i = 1; i + 1 < n; ++i) {
        trial[i] += damp * delta[i - 1];
        positive = positive && trial[i] > 0.0;
      }
      if (!positive) continue;
      const double tres = disc.residual(trial, res_trial);
      if (tres < nres || nres <= 1e-12) {
        step = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) step = std::max(step, std::abs(damp * delta[i - 1]) / trial[i]);
        phi.swap(trial);
        res.swap(res_trial);
        nres = tres;
        break;
      }
    }
    if (step <= opt.step_tol) {
      ++out.iterations;
      break;
    }
  }
  if (!(nres <= opt.residual_tol))
    throw NumericalFailure("newton_failed", "Newton iteration did not converge",
                           {{"residual", nres}, {"iterations", out.iterations}});
  out.s = std::move(s);
  out.phi = std::move(phi);
  out.residual = nres;
  return out;
}

namespace {

RadialFunction to_profile(const GridSolution& g, const ProblemParams& p, std::string provenance) {
  const double m = (p.N - 2.0) / 2.0;
  RadialFunction f;
  f.params = p;
  f.provenance = std::move(provenance);
  for (std::size_t i = 0; i < g.s.size(); ++i) {
    if (!(g.phi[i] > 0.0)) continue;
    f.r.push_back(std::exp(g.s[i]));
    f.u.push_back(g.phi[i] * std::exp(-m * g.s[i]));
  }
  return f;
}

}  // namespace

AnnulusSolution solve_annulus_detailed(const AnnulusProblem& ap, std::size_t nodes, const NewtonOptions& opt) {
  const auto& p = ap.params;
  validate(p);
  if (!(ap.r_a > 0.0 && ap.r_a < ap.r_b)) throw ValidationError("need 0 < r_a < r_b");
  if (ap.g_a < 0.0 || ap.g_b < 0.0 || !(ap.g_a > 0.0 || ap.g_b > 0.0))
    throw ValidationError("boundary data must be non-negative and not both zero");
  if (nodes < 3) throw ValidationError("need at least 3 nodes");
  const auto e = compute_exponents(p);
  const double m = e.half_dim;
  const double sa = std::log(ap.r_a), sb = std::log(ap.r_b);
  auto s = linspace(sa, sb, nodes);
  std::vector<double> phi(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double t = (s[i] - sa) / (sb - sa);
    const double lin = (1.0 - t) * ap.g_a + t * ap.g_b;
    const double sup = ap.g_a * std::exp(-e.Theta * (s[i] - sa));
    phi[i] = std::exp(m * s[i]) * std::max(lin, sup);
  }
  phi.front() = std::exp(m * sa) * ap.g_a;
  phi.back() = std::exp(m * sb) * ap.g_b;
  AnnulusSolution out;
  out.grid = solve_on_grid(p, std::move(s), std::move(phi), opt);
  out.profile = to_profile(out.grid, p, "bvp");
  return out;
}

RadialFunction solve_annulus(const AnnulusProblem& ap, std::size_t nodes) {
  return solve_annulus_detailed(ap, nodes).profile;
}

namespace {

// Doubling ladder on a single uniform s-grid anchored at log R; each level
// prepends one octave of nodes, so earlier nodes are reused exactly.
void run_ladder(SchemeTrace& tr, double k_max, const std::function<double(double)>& inner_u,
                const std::function<double(double)>& barrier_u, const LadderOptions& opt) {
  const auto& p = tr.params;
  if (opt.nodes_per_octave < 2) throw ValidationError("nodes_per_octave must be at least 2");
  if (!(opt.ref_lo > 0.0 && opt.ref_lo < opt.ref_hi && opt.ref_hi < 1.0))
    throw ValidationError("reference annulus must satisfy 0 < lo < hi < 1");
  const double m = (p.N - 2.0) / 2.0;
  const double h = std::numbers::ln2 / static_cast<double>(opt.nodes_per_octave);
  const double sR = std::log(tr.R);
  const double k0 = std::ceil(2.0 / tr.R);
  if (!(k_max >= k0)) throw ValidationError("k_max must be at least ceil(2/R)");
  const auto n_base = static_cast<std::size_t>(std::ceil(std::log(tr.R * k0) / h));

  std::vector<double> prev_phi, prev_s;
  std::size_t n_prev = 0;
  for (std::size_t level = 0;; ++level) {
    const std::size_t intervals = n_base + level * opt.nodes_per_octave;
    const double s_in = sR - static_cast<double>(intervals) * h;
    const double k = std::exp(-s_in);
    if (k > k_max * (1.0 + 1e-12)) break;
    const std::size_t n = intervals + 1;
    std::vector<double> s(n), phi(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = sR - static_cast<double>(n - 1 - i) * h;
    const std::size_t offset = n - n_prev;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = std::exp(s[i]);
      phi[i] = (n_prev > 0 && i >= offset) ? prev_phi[i - offset] : std::exp(m * s[i]) * barrier_u(r);
    }
    phi.front() = std::exp(m * s.front()) * inner_u(std::exp(s.front()));
    phi.back() = std::exp(m * sR) * tr.h;
    for (std::size_t i = 1; i + 1 < n; ++i)
      if (!(phi[i] > 0.0)) phi[i] = std::exp(m * s[i]) * barrier_u(std::exp(s[i]));

    GridSolution g;
    try {
      g = solve_on_grid(p, s, phi, opt.newton);
    } catch (const NumericalFailure& e) {
      auto detail = e.detail();
      detail["k"] = k;
      throw NumericalFailure(e.kind(), e.what(), detail);
    }

    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = std::exp(s[i]);
      const double u = g.phi[i] * std::exp(-m * s[i]);
      if (r >= opt.ref_lo * tr.R && r <= opt.ref_hi * tr.R) sup = std::max(sup, u);
      const double b = barrier_u(r);
      if (b > 0.0) tr.sandwich_violation = std::max(tr.sandwich_violation, (u - b) / b);
    }
    if (n_prev > 0) {
      double diff = 0.0;
      for (std::size_t i = offset; i < n; ++i) {
        const double r = std::exp(s[i]);
        const double un = g.phi[i] * std::exp(-m * s[i]);
        const double uo = prev_phi[i - offset] * std::exp(-m * s[i]);
        if (uo > 0.0) tr.monotone_violation = std::max(tr.monotone_violation, (un - uo) / uo);
        if (r >= opt.ref_lo * tr.R && r <= opt.ref_hi * tr.R) diff = std::max(diff, std::abs(un - uo));
      }
      tr.sup_diffs.push_back(diff);
    }
    tr.k_values.push_back(k);
    tr.sup_values.push_back(sup);
    prev_phi = std::move(g.phi);
    prev_s = std::move(s);
    n_prev = n;
  }
  tr.limit = to_profile(GridSolution{prev_s, prev_phi, 0, 0}, p, tr.scheme == "gamma" ? "gamma_scheme" : "scheme");
}

}  // namespace

SchemeTrace approximate_scheme(const ProblemParams& p, double C, double R, double h_val, double k_max,
                               const LadderOptions& opt) {
  validate(p);
  if (!(C > 0.0) || !(R > 0.0) || h_val < 0.0) throw ValidationError("need C > 0, R > 0 and h >= 0");
  const auto e = compute_exponents(p);
  if (e.ell > 0.0 && C < std::pow(e.ell, 1.0 / (p.q - 1.0)) * (1.0 - 1e-12))
    throw ValidationError("C must be at least ell^{1/(q-1)} for C r^{-Theta} to be a super-solution");
  if (C * std::pow(R, -e.Theta) < h_val * (1.0 - 1e-12))
    throw ValidationError("C R^{-Theta} must dominate the outer datum h");
  SchemeTrace tr;
  tr.scheme = "approximate";
  tr.params = p;
  tr.C = C;
  tr.R = R;
  tr.h = h_val;
  auto sup = [&](double r) { return C * std::pow(r, -e.Theta); };
  run_ladder(tr, k_max, sup, sup, opt);
  return tr;
}

SchemeTrace gamma_scheme(const ProblemParams& p, double gamma, double C, double R, double h_val, double k_max,
                         const LadderOptions& opt) {
  validate(p);
  if (classify(p).major != MajorCase::M2) throw ValidationError("gamma_scheme needs Case M2 parameters");
  if (!(gamma > 0.0) || !(C > 0.0) || !(R > 0.0) || h_val < 0.0)
    throw ValidationError("need gamma > 0, C > 0, R > 0 and h >= 0");
  const auto e = compute_exponents(p);
  if (e.at_hardy() && !(R < 1.0)) throw ValidationError("at lambda = lambda_H the scheme needs R < 1");
  auto sup = [&](double r) { return gamma * phi_plus(r, p) + C * phi_minus(r, p); };
  if (sup(R) < h_val * (1.0 - 1e-12)) throw ValidationError("inner super-solution must dominate the outer datum h");
  SchemeTrace tr;
  tr.scheme = "gamma";
  tr.params = p;
  tr.C = C;
  tr.R = R;
  tr.h = h_val;
  tr.gamma = gamma;
  run_ladder(tr, k_max, sup, sup, opt);
  return tr;
}

double nonexistence_barrier(double eps, double r, const ProblemParams& p) {
  const auto e = compute_exponents(p);
  if (!e.p_minus) throw ValidationError("V_eps needs lambda <= lambda_H");
  const double v = eps * std::pow(r, -*e.p_minus);
  if (near_equal(p.theta, *e.theta_minus)) return v;
  return v + eps * std::pow(r, -e.Theta);
}

NonexistenceReport demonstrate_nonexistence(const ProblemParams& p, const std::vector<double>& eps_ladder, double r_a,
                                            double r_b) {
  validate(p);
  if (classify(p).major != MajorCase::NCase) throw ValidationError("non-existence demonstration needs Case N parameters");
  if (eps_ladder.empty()) throw ValidationError("epsilon ladder is empty");
  for (double eps : eps_ladder)
    if (!(eps > 0.0)) throw ValidationError("epsilon values must be positive");
  if (!(r_a > 0.0 && r_a < r_b)) throw ValidationError("need 0 < r_a < r_b");
  const auto e = compute_exponents(p);
  NonexistenceReport rep;
  rep.params = p;
  rep.r_a = r_a;
  rep.r_b = r_b;
  rep.single_term = near_equal(p.theta, *e.theta_minus);

  std::vector<double> powers{*e.p_minus};
  if (!rep.single_term) powers.push_back(e.Theta);
  rep.certificate_min = std::numeric_limits<double>::infinity();
  for (double eps : eps_ladder) {
    for (double s : linspace(std::log(1e-8), std::log(1e8), 2001)) {
      const double r = std::exp(s);
      double v = 0, lin = 0, scale = 0;
      for (double a : powers) {
        const double t = eps * std::pow(r, -a);
        v += t;
        lin += t * (a * a - (p.N - 2.0) * a + p.lambda);  // r² 𝕃 of the term
        scale = std::max(scale, t * (a * a + (p.N - 2.0) * std::abs(a) + std::abs(p.lambda)));
      }
      const double nl = std::pow(r, p.theta + 2.0) * std::pow(v, p.q);
      scale = std::max(scale, nl);
      rep.certificate_min = std::min(rep.certificate_min, (-lin + nl) / scale);
    }
  }
  rep.certificate_passed = rep.certificate_min >= -1e-9;

  const double m = e.half_dim;
  const double s_lo = std::log(r_a) + (std::log(r_b) - std::log(r_a)) / 3.0;
  const double s_hi = std::log(r_a) + 2.0 * (std::log(r_b) - std::log(r_a)) / 3.0;
  rep.bounded_by_barrier = true;
  for (double eps : eps_ladder) {
    const AnnulusProblem ap{r_a, r_b, nonexistence_barrier(eps, r_a, p), nonexistence_barrier(eps, r_b, p), p};
    const auto sol = solve_annulus_detailed(ap);
    NonexistenceStep st;
    st.epsilon = eps;
    for (std::size_t i = 0; i < sol.grid.s.size(); ++i) {
      const double s = sol.grid.s[i];
      const double u = sol.grid.phi[i] * std::exp(-m * s);
      st.sup_closed = std::max(st.sup_closed, u);
      if (s >= s_lo && s <= s_hi) st.sup_interior = std::max(st.sup_interior, u);
      st.max_ratio_to_barrier = std::max(st.max_ratio_to_barrier, u / nonexistence_barrier(eps, std::exp(s), p));
    }
    rep.bounded_by_barrier = rep.bounded_by_barrier && st.max_ratio_to_barrier <= 1.0 + 1e-9;
    rep.steps.push_back(st);
  }
  double mean = 0.0;
  for (const auto& st : rep.steps) mean += st.sup_closed / st.epsilon;
  mean /= static_cast<double>(rep.steps.size());
  for (const auto& st : rep.steps)
    rep.scaling_spread = std::max(rep.scaling_spread, std::abs(st.sup_closed / st.epsilon / mean - 1.0));
  rep.scaling_passed = rep.scaling_spread <= 0.1;
  return rep;
}

nlohmann::json to_json(const SchemeTrace& t, bool include_profile) {
  nlohmann::json j{{"scheme", t.scheme},
                   {"params", to_json(t.params)},
                   {"C", t.C},
                   {"R", t.R},
                   {"h", t.h},
                   {"k_values", t.k_values},
                   {"sup_values", t.sup_values},
                   {"sup_diffs", t.sup_diffs},
                   {"monotone_violation", t.monotone_violation},
                   {"sandwich_violation", t.sandwich_violation},
                   {"monotone", t.monotone()}};
  if (t.scheme == "gamma") j["gamma"] = t.gamma;
  if (include_profile) j["limit"] = {{"r", t.limit.r}, {"u", t.limit.u}};
  return j;
}

nlohmann::json to_json(const NonexistenceReport& r) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : r.steps)
    steps.push_back({{"epsilon", s.epsilon},
                     {"sup_closed", s.sup_closed},
                     {"sup_interior", s.sup_interior},
                     {"max_ratio_to_barrier", s.max_ratio_to_barrier}});
  return {{"params", to_json(r.params)},
          {"single_term", r.single_term},
          {"certificate_min", r.certificate_min},
          {"certificate_passed", r.certificate_passed},
          {"annulus", {r.r_a, r.r_b}},
          {"steps", steps},
          {"scaling_spread", r.scaling_spread},
          {"scaling_passed", r.scaling_passed},
          {"bounded_by_barrier", r.bounded_by_barrier}};
}

}  // namespace hardy
