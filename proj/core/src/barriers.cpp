#include "hardy/barriers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>

#include "hardy/errors.hpp"

namespace hardy {

namespace {

struct Base {
  CriticalExponents e;
  double K;  // N - 2 - 2Θ
  double qm1;
};

Base base_of(const ProblemParams& p) {
  const auto e = compute_exponents(p);
  if (!(e.ell > 0.0)) throw ValidationError("barriers require ell > 0");
  return {e, p.N - 2.0 - 2.0 * e.Theta, p.q - 1.0};
}

double log_u0_coeff(const Base& b) { return std::log(b.e.ell) / b.qm1; }

// log(1 - e^x) for x < 0 and its derivatives in x.
struct Log1mExp {
  double f, f1, f2;
};
Log1mExp log1mexp(double x) {
  const double em = std::expm1(-x);  // e^{-x} - 1 > 0
  return {std::log(-std::expm1(x)), -1.0 / em, -std::exp(-x) / (em * em)};
}

// log(1 + e^x) and its derivatives in x.
struct Log1pExp {
  double f, f1, f2;
};
Log1pExp log1pexp(double x) {
  const double f = x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
  const double sig = 1.0 / (1.0 + std::exp(-x));
  return {f, sig, sig * (1.0 - sig)};
}

}  // namespace

QuadraticCoeffs rough_coeffs(double alpha, const ProblemParams& p) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0,1)");
  const auto b = base_of(p);
  const double ra = std::sqrt(alpha);
  return {1.0 - ra / b.e.ell * (b.K - ra), -2.0 + ra / b.e.ell * (b.K - alpha)};
}

double h_alpha(double t, double alpha, const ProblemParams& p) {
  if (!(t > 0.0 && t < 1.0)) throw ValidationError("t must lie in (0,1)");
  const auto k = rough_coeffs(alpha, p);
  const double expo = -(p.q - 1.0) / std::sqrt(alpha) - 2.0;
  return std::exp(expo * std::log1p(-t)) * (k.A * t * t + k.B * t + 1.0);
}

AlphaChoice select_alpha_c(const ProblemParams& p) {
  const auto label = classify(p);
  if (label.major != MajorCase::U && label.major != MajorCase::M1)
    throw ValidationError("rough barrier w_delta is constructed in Cases U and M1 only");
  for (double alpha : kAlphaLadder) {
    const auto k = rough_coeffs(alpha, p);
    const double disc = k.B * k.B - 4.0 * k.A;
    bool ok = false;
    if (label.major == MajorCase::U) {
      ok = disc < 0.0;
    } else if (k.A > 0.0 && disc > 0.0) {
      const double sq = std::sqrt(disc);
      ok = (-k.B - sq) / (2.0 * k.A) > 1.0;  // smaller root
    }
    if (!ok) continue;

    auto h = [&](double t) { return t <= 0.0 ? 1.0 : h_alpha(t, alpha, p); };
    constexpr int kScan = 10000;
    double best_t = 0.0, best = 1.0;
    for (int i = 1; i < kScan; ++i) {
      const double t = static_cast<double>(i) / kScan;
      const double v = h(t);
      if (v < best) best = v, best_t = t;
    }
    if (best_t > 0.0) {
      const double lo = std::max(0.0, best_t - 1.0 / kScan);
      const double hi = std::min(1.0 - 1e-15, best_t + 1.0 / kScan);
      const auto [tm, vm] = boost::math::tools::brent_find_minima(h, lo, hi, 52);
      if (vm < best) best = vm, best_t = tm;
    }
    if (!(best > 0.0)) continue;
    return {alpha, std::pow(best, 1.0 / (p.q - 1.0)), best, best_t, k};
  }
  throw NumericalFailure("alpha_not_found", "no alpha on the ladder satisfies the barrier conditions",
                         {{"params", to_json(p)}});
}

RefinedCoeffs refined_coeffs(double alpha, double eta, const ProblemParams& p) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0,1)");
  if (eta < 0.0) throw ValidationError("eta must be non-negative");
  const auto b = base_of(p);
  const double ra = std::sqrt(alpha);
  const double l = b.e.ell;
  const double K = b.K;
  RefinedCoeffs k;
  k.alpha = alpha;
  k.eta = eta;
  for (int i = 0; i < 2; ++i) {
    const double sg = i == 0 ? 1.0 : -1.0;
    k.A[i] = 1.0 + sg * ra * (K + sg * ra) / l - sg * eta * (K - sg * eta + sg * 2.0 * ra) / l;
    k.B[i] = 2.0 + sg * ra * (K + alpha) / l - sg * 2.0 * eta * (K - sg * eta + sg * ra) / l;
    k.C[i] = 1.0 - sg * eta * (K - sg * eta) / l;
    const double w = ra / b.qm1;
    k.Btilde[i] = (1.0 + sg * w) * k.B[i] - sg * 2.0 * w * k.A[i];
    k.Ctilde[i] = (1.0 + sg * 2.0 * w) * k.C[i] - sg * w * k.B[i];
  }
  return k;
}

bool refined_admissible(const RefinedCoeffs& k, double epsilon, double q) {
  for (int i = 0; i < 2; ++i)
    if (!(k.A[i] > 0.0 && k.Btilde[i] > 0.0 && k.Ctilde[i] > 0.0)) return false;
  return k.C[0] <= std::pow(1.0 + epsilon, q - 1.0) && k.C[1] >= std::pow(1.0 - epsilon, q - 1.0);
}

double refined_G(const RefinedCoeffs& k, int sign, double t, double q) {
  const int i = sign > 0 ? 0 : 1;
  const double sg = sign > 0 ? 1.0 : -1.0;
  const double expo = -2.0 - sg * (q - 1.0) / std::sqrt(k.alpha);
  return std::pow(1.0 + t, expo) * (k.A[i] * t * t + k.B[i] * t + k.C[i]);
}

double select_alpha_refined(const ProblemParams& p) {
  if (classify(p).major == MajorCase::NCase) throw ValidationError("refined barriers need Case U, M1 or M2");
  for (double alpha : kAlphaLadder) {
    const auto k = refined_coeffs(alpha, 0.0, p);
    bool ok = true;
    for (int i = 0; i < 2; ++i) ok = ok && k.A[i] > 0.0 && k.Btilde[i] > 0.0 && k.Ctilde[i] > 0.0;
    if (ok) return alpha;
  }
  throw NumericalFailure("alpha_not_found", "no alpha on the ladder gives positive refined coefficients",
                         {{"params", to_json(p)}});
}

double refined_eta0(double epsilon, double alpha, const ProblemParams& p) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("epsilon must lie in (0,1)");
  if (classify(p).major == MajorCase::NCase) throw ValidationError("refined barriers need Case U, M1 or M2");
  double eta = 1.0;
  for (int k = 0; k <= 60; ++k, eta *= 0.5) {
    if (refined_admissible(refined_coeffs(alpha, eta, p), epsilon, p.q)) return eta;
  }
  throw NumericalFailure("eta_not_found", "no eta on the ladder satisfies the refined barrier conditions",
                         {{"params", to_json(p)}, {"alpha", alpha}, {"epsilon", epsilon}});
}

std::string_view to_string(BarrierKind k) {
  switch (k) {
    case BarrierKind::WDelta: return "w_delta";
    case BarrierKind::ZDelta: return "z_delta";
    case BarrierKind::WPlus: return "w_plus";
    case BarrierKind::WMinus: return "w_minus";
  }
  return "?";
}

BarrierKind barrier_kind_from_string(std::string_view s) {
  if (s == "w_delta") return BarrierKind::WDelta;
  if (s == "z_delta") return BarrierKind::ZDelta;
  if (s == "w_plus") return BarrierKind::WPlus;
  if (s == "w_minus") return BarrierKind::WMinus;
  throw ValidationError("unknown barrier kind: " + std::string(s));
}

bool is_subsolution(BarrierKind k) { return k != BarrierKind::WPlus; }

LogJet barrier_log_jet(const BarrierSpec& spec, double s, const ProblemParams& p) {
  const auto b = base_of(p);
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) throw ValidationError("alpha must lie in (0,1)");
  const double ra = std::sqrt(spec.alpha);
  const double a = spec.alpha;
  LogJet j;
  switch (spec.kind) {
    case BarrierKind::WDelta:
    case BarrierKind::ZDelta: {
      if (!(spec.c > 0.0) || !(spec.delta > 0.0)) throw ValidationError("c and delta must be positive");
      const double sd = std::log(spec.delta);
      const bool outer = spec.kind == BarrierKind::WDelta;
      const double x = outer ? a * (sd - s) : a * (s - sd);
      if (!(x < 0.0)) throw ValidationError(outer ? "w_delta is defined for r > delta" : "z_delta is defined for r < delta");
      const double dx = outer ? -a : a;
      const auto l = log1mexp(x);
      j.g = std::log(spec.c) + log_u0_coeff(b) - b.e.Theta * s + l.f / ra;
      j.g1 = -b.e.Theta + l.f1 * dx / ra;
      j.g2 = l.f2 * dx * dx / ra;
      break;
    }
    case BarrierKind::WPlus:
    case BarrierKind::WMinus: {
      if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0)) throw ValidationError("epsilon must lie in (0,1)");
      if (!(spec.nu > 0.0) || spec.eta < 0.0) throw ValidationError("nu must be positive and eta non-negative");
      const double sg = spec.kind == BarrierKind::WPlus ? 1.0 : -1.0;
      const auto l = log1pexp(a * s - std::log(spec.nu));
      j.g = std::log1p(sg * spec.epsilon) + log_u0_coeff(b) - b.e.Theta * s - sg * spec.eta * s + sg * l.f / ra;
      j.g1 = -b.e.Theta - sg * spec.eta + sg * l.f1 * a / ra;
      j.g2 = sg * l.f2 * a * a / ra;
      break;
    }
  }
  return j;
}

double eval_barrier(const BarrierSpec& spec, double r, const ProblemParams& p) {
  if (!(r > 0.0)) throw ValidationError("r must be positive");
  if (spec.kind == BarrierKind::WDelta && r == spec.delta) return 0.0;
  if (spec.kind == BarrierKind::ZDelta && r == spec.delta) return 0.0;
  return std::exp(barrier_log_jet(spec, std::log(r), p).g);
}

std::vector<double> barrier_log_grid(const BarrierSpec& spec, std::size_t n) {
  if (n < 2) throw ValidationError("grid needs at least two points");
  const double span = 40.0 / spec.alpha;
  std::vector<double> s(n);
  const double lo = std::log(1e-9), hi = std::log(span);
  for (std::size_t i = 0; i < n; ++i) {
    const double tau = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    s[i] = tau;
  }
  const double sd = std::log(spec.delta);
  switch (spec.kind) {
    case BarrierKind::WDelta:
      for (auto& v : s) v = sd + v;
      break;
    case BarrierKind::ZDelta:
      for (auto& v : s) v = sd - v;
      std::reverse(s.begin(), s.end());
      break;
    case BarrierKind::WPlus:
    case BarrierKind::WMinus:
      for (auto& v : s) v = -v;
      std::reverse(s.begin(), s.end());
      break;
  }
  return s;
}

CertificationReport certify_barrier_sign(const BarrierSpec& spec, const ProblemParams& p,
                                         const std::vector<double>& log_grid, double tol) {
  if (log_grid.empty()) throw ValidationError("certification grid is empty");
  const auto e = compute_exponents(p);
  CertificationReport rep;
  rep.spec = spec;
  rep.params = p;
  rep.tol = tol;
  const bool sub = is_subsolution(spec.kind);
  rep.sense = sub ? "sub" : "super";
  rep.max_violation = -std::numeric_limits<double>::infinity();
  rep.s_min = *std::min_element(log_grid.begin(), log_grid.end());
  rep.s_max = *std::max_element(log_grid.begin(), log_grid.end());
  for (double s : log_grid) {
    const auto j = barrier_log_jet(spec, s, p);
    // r² L w / w and r² · r^θ w^{q-1}
    const double lin = j.g2 + j.g1 * j.g1 + (p.N - 2.0) * j.g1 + p.lambda;
    const double log_nl = (p.theta + 2.0) * s + (p.q - 1.0) * j.g;
    // (-Lw + r^θ w^q) / (r^θ w^q)
    double rel = 1.0 - lin * std::exp(-log_nl);
    if (std::isnan(rel)) rel = lin > 0 ? -std::numeric_limits<double>::infinity() : 1.0;
    const double violation = sub ? rel : -rel;
    rep.max_violation = std::max(rep.max_violation, violation);
    if (violation > tol) ++rep.violations;
  }
  (void)e;
  rep.passed = rep.violations == 0;
  return rep;
}

double apriori_constant(const ProblemParams& p) {
  validate(p);
  const double qm1 = p.q - 1.0;
  const double slope = 16.0 / qm1;
  const double a0 = slope * 2.0 * (p.q + 1.0) / qm1;  // ζ = 0 value of the bracket
  const double a1 = slope * p.N - a0;                   // coefficient of ζ
  // For fixed s = |x|/|x0|: s^{-θ}(a0 + a1 ζ + λ s^{-2} ζ²), maximised over ζ ∈ [0,1].
  auto best_in_zeta = [&](double s) {
    const double c2 = p.lambda / (s * s);
    double m = std::max(a0, a0 + a1 + c2);
    if (c2 < 0.0) {
      const double z = -a1 / (2.0 * c2);
      if (z > 0.0 && z < 1.0) m = std::max(m, a0 + a1 * z + c2 * z * z);
    }
    return std::pow(s, -p.theta) * m;
  };
  auto neg = [&](double s) { return -best_in_zeta(s); };
  constexpr int kScan = 2000;
  double best = -std::numeric_limits<double>::infinity(), best_s = 0.5;
  for (int i = 0; i <= kScan; ++i) {
    const double s = 0.5 + static_cast<double>(i) / kScan;
    const double v = best_in_zeta(s);
    if (v > best) best = v, best_s = s;
  }
  const double lo = std::max(0.5, best_s - 1.0 / kScan), hi = std::min(1.5, best_s + 1.0 / kScan);
  const auto [sm, vm] = boost::math::tools::brent_find_minima(neg, lo, hi, 52);
  best = std::max(best, -vm);
  (void)sm;
  return std::pow(best, 1.0 / qm1);
}

nlohmann::json to_json(const AlphaChoice& a) {
  return {{"alpha", a.alpha}, {"c_alpha", a.c_alpha}, {"inf_h", a.inf_h}, {"t_at_inf", a.t_at_inf},
          {"A_alpha", a.coeffs.A}, {"B_alpha", a.coeffs.B}};
}

nlohmann::json to_json(const RefinedCoeffs& k) {
  auto pair = [](const std::array<double, 2>& v) { return nlohmann::json{{"plus", v[0]}, {"minus", v[1]}}; };
  return {{"alpha", k.alpha}, {"eta", k.eta}, {"A", pair(k.A)}, {"B", pair(k.B)},
          {"C", pair(k.C)}, {"Btilde", pair(k.Btilde)}, {"Ctilde", pair(k.Ctilde)}};
}

nlohmann::json to_json(const CertificationReport& r) {
  nlohmann::json j{{"kind", std::string(to_string(r.spec.kind))},
                   {"params", to_json(r.params)},
                   {"alpha", r.spec.alpha},
                   {"sense", r.sense},
                   {"tol", r.tol},
                   {"max_violation", r.max_violation},
                   {"violations", r.violations},
                   {"passed", r.passed},
                   {"grid_span", {r.s_min, r.s_max}}};
  if (r.spec.kind == BarrierKind::WDelta || r.spec.kind == BarrierKind::ZDelta) {
    j["c"] = r.spec.c;
    j["delta"] = r.spec.delta;
  } else {
    j["epsilon"] = r.spec.epsilon;
    j["eta"] = r.spec.eta;
    j["nu"] = r.spec.nu;
  }
  return j;
}

}  // namespace hardy
