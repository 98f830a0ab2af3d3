#include "hardy/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "hardy/errors.hpp"
#include "hardy/exact.hpp"

namespace hardy {

double SweepAxis::value(std::size_t i) const {
  return i + 1 == count ? stop : start + step() * static_cast<double>(i);
}

void validate(const SweepSpec& spec) {
  if (spec.axes.empty()) throw ValidationError("sweep needs at least one axis");
  std::vector<std::string> seen;
  for (const auto& a : spec.axes) {
    if (a.name != "q" && a.name != "theta" && a.name != "lambda")
      throw ValidationError("sweep axis must be q, theta or lambda: " + a.name);
    if (std::find(seen.begin(), seen.end(), a.name) != seen.end())
      throw ValidationError("duplicate sweep axis: " + a.name);
    seen.push_back(a.name);
    if (a.count < 2) throw ValidationError("sweep axis count must be at least 2");
    if (!std::isfinite(a.start) || !std::isfinite(a.stop)) throw ValidationError("sweep axis bounds must be finite");
    if (a.name == "q" && !(std::min(a.start, a.stop) > 1.0)) throw ValidationError("q axis values must exceed 1");
  }
  for (const auto& o : spec.outputs)
    if (std::find(kAtlasFields.begin(), kAtlasFields.end(), o) == kAtlasFields.end())
      throw ValidationError("unknown sweep output: " + o);
  ProblemParams probe = spec.fixed;
  for (const auto& a : spec.axes) {
    if (a.name == "q") probe.q = a.start;
  }
  validate(probe);
}

SweepSpec sweep_spec_from_json(const nlohmann::json& j) {
  try {
    SweepSpec s;
    for (const auto& a : j.at("axes"))
      s.axes.push_back({a.at("name").get<std::string>(), a.at("start").get<double>(), a.at("stop").get<double>(),
                        a.at("count").get<std::size_t>()});
    if (j.contains("fixed")) {
      const auto& f = j["fixed"];
      s.fixed.N = f.value("N", s.fixed.N);
      s.fixed.q = f.value("q", s.fixed.q);
      s.fixed.theta = f.value("theta", s.fixed.theta);
      s.fixed.lambda = f.value("lambda", s.fixed.lambda);
    }
    if (j.contains("outputs")) s.outputs = j["outputs"].get<std::vector<std::string>>();
    s.threads = j.value("threads", 0u);
    validate(s);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed sweep spec: ") + e.what());
  }
}

nlohmann::json to_json(const SweepSpec& spec) {
  nlohmann::json axes = nlohmann::json::array();
  for (const auto& a : spec.axes) axes.push_back({{"name", a.name}, {"start", a.start}, {"stop", a.stop}, {"count", a.count}});
  return {{"axes", axes}, {"fixed", to_json(spec.fixed)}, {"outputs", spec.outputs}, {"threads", spec.threads}};
}

namespace {

void set_axis(ProblemParams& p, const std::string& name, double v) {
  if (name == "q") p.q = v;
  else if (name == "theta") p.theta = v;
  else p.lambda = v;
}

AtlasCell evaluate(const SweepSpec& spec, std::size_t index) {
  AtlasCell c;
  c.coords.resize(spec.axes.size());
  c.params = spec.fixed;
  for (std::size_t k = spec.axes.size(); k-- > 0;) {
    const auto& a = spec.axes[k];
    c.coords[k] = a.value(index % a.count);
    index /= a.count;
    set_axis(c.params, a.name, c.coords[k]);
  }
  const auto e = compute_exponents(c.params);
  c.label = classify(c.params, e);
  c.ell = e.ell;
  c.lambda_star = e.lambda_star;
  c.exists = c.label.major != MajorCase::NCase && e.ell > 0.0;
  return c;
}

}  // namespace

Atlas run_sweep(const SweepSpec& spec) {
  validate(spec);
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t total = 1;
  for (const auto& a : spec.axes) total *= a.count;
  Atlas atlas{spec, std::vector<AtlasCell>(total), 0.0};

  unsigned workers = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
  constexpr std::size_t kChunk = 256;
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::size_t b; (b = next.fetch_add(kChunk)) < total && !failed;) {
          const std::size_t e = std::min(total, b + kChunk);
          for (std::size_t i = b; i < e; ++i) atlas.cells[i] = evaluate(spec, i);
        }
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  atlas.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return atlas;
}

void write_atlas_csv(std::ostream& os, const Atlas& atlas) {
  const auto& spec = atlas.spec;
  for (const auto& a : spec.axes) os << a.name << ',';
  for (std::size_t k = 0; k < spec.outputs.size(); ++k) os << spec.outputs[k] << (k + 1 < spec.outputs.size() ? "," : "");
  os << '\n';
  for (const auto& c : atlas.cells) {
    for (double v : c.coords) os << format_double(v) << ',';
    for (std::size_t k = 0; k < spec.outputs.size(); ++k) {
      const auto& o = spec.outputs[k];
      if (o == "major") os << to_string(c.label.major);
      else if (o == "subcase") os << (c.label.subcase == SubCase::None ? "" : to_string(c.label.subcase));
      else if (o == "ell") os << format_double(c.ell);
      else if (o == "lambda_star") os << format_double(c.lambda_star);
      else if (o == "exists") os << (c.exists ? "true" : "false");
      os << (k + 1 < spec.outputs.size() ? "," : "");
    }
    os << '\n';
  }
}

namespace {

double theta_branch(const ProblemParams& p, double lambda, int sign) {
  const double m = 0.5 * (p.N - 2.0);
  const double root = std::sqrt(std::max(0.0, m * m - lambda));
  return (m + sign * root) * (p.q - 1.0) - 2.0;
}

}  // namespace

BoundaryCheck check_atlas_boundaries(const Atlas& atlas) {
  const auto& spec = atlas.spec;
  if (spec.axes.size() != 2) throw ValidationError("boundary check needs a two-axis atlas");
  const int li = spec.axes[0].name == "lambda" ? 0 : spec.axes[1].name == "lambda" ? 1 : -1;
  const int ti = spec.axes[0].name == "theta" ? 0 : spec.axes[1].name == "theta" ? 1 : -1;
  if (li < 0 || ti < 0) throw ValidationError("boundary check needs lambda and theta axes");
  const auto& la = spec.axes[li];
  const auto& ta = spec.axes[ti];
  const double dl = std::abs(la.step()), dt = std::abs(ta.step());
  const double l_lo = std::min(la.start, la.stop), l_hi = std::max(la.start, la.stop);
  const double t_lo = std::min(ta.start, ta.stop), t_hi = std::max(ta.start, ta.stop);
  const double lambda_H = 0.25 * (spec.fixed.N - 2.0) * (spec.fixed.N - 2.0);

  // Max-norm distance in cells from (l, t) to the analytic boundary set.
  auto curve_distance = [&](double l, double t) {
    double best = std::abs(l - lambda_H) / dl;
    // θ± is monotone in λ, so on a window the branch sweeps the interval
    // between its end values; scan windows of growing width.
    for (int sign : {-1, 1}) {
      for (double w = 0.0; w <= 2.0 && w < best; w += 1.0 / 64.0) {
        const double a = l - w * dl, b = std::min(l + w * dl, lambda_H);
        if (a > lambda_H) break;
        const double ya = theta_branch(spec.fixed, a, sign), yb = theta_branch(spec.fixed, b, sign);
        const double gap = std::max({0.0, std::min(ya, yb) - t, t - std::max(ya, yb)}) / dt;
        best = std::min(best, std::max(w, gap));
      }
    }
    return best;
  };

  BoundaryCheck out;
  const std::size_t n0 = spec.axes[0].count, n1 = spec.axes[1].count;
  auto cell = [&](std::size_t i, std::size_t j) -> const AtlasCell& { return atlas.cells[i * n1 + j]; };
  struct Mid {
    double l, t;
  };
  std::vector<Mid> mids;
  for (std::size_t i = 0; i < n0; ++i) {
    for (std::size_t j = 0; j < n1; ++j) {
      const auto& c = cell(i, j);
      for (const auto* nb : {i + 1 < n0 ? &cell(i + 1, j) : nullptr, j + 1 < n1 ? &cell(i, j + 1) : nullptr}) {
        if (!nb || nb->label.major == c.label.major) continue;
        const Mid m{0.5 * (c.coords[li] + nb->coords[li]), 0.5 * (c.coords[ti] + nb->coords[ti])};
        mids.push_back(m);
        ++out.boundary_pairs;
        const double d = curve_distance(m.l, m.t);
        out.worst_pair_distance = std::max(out.worst_pair_distance, d);
        if (d > 1.0 + 1e-9) ++out.stray_pairs;
      }
    }
  }

  auto nearest_pair = [&](double l, double t) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& m : mids) best = std::min(best, std::max(std::abs(m.l - l) / dl, std::abs(m.t - t) / dt));
    return best;
  };
  auto probe = [&](double l, double t) {
    if (l < l_lo || l > l_hi || t < t_lo || t > t_hi) return;
    ++out.curve_samples;
    const double d = nearest_pair(l, t);
    out.worst_curve_distance = std::max(out.worst_curve_distance, d);
    if (d > 1.0 + 1e-9) ++out.missed_samples;
  };
  constexpr int kPerCell = 4;
  // the λ_H line only shows as a label change with cells on both sides
  if (lambda_H > l_lo && lambda_H < l_hi - 1e-9 * dl) {
    const auto n = static_cast<std::size_t>(kPerCell * (ta.count - 1));
    for (std::size_t k = 0; k <= n; ++k) probe(lambda_H, t_lo + (t_hi - t_lo) * static_cast<double>(k) / n);
  }
  if (l_lo <= lambda_H) {
    const double top = std::min(l_hi, lambda_H);
    const auto n = static_cast<std::size_t>(kPerCell * (la.count - 1));
    for (std::size_t k = 0; k <= n; ++k) {
      const double l = l_lo + (top - l_lo) * static_cast<double>(k) / n;
      for (int sign : {-1, 1}) probe(l, theta_branch(spec.fixed, l, sign));
    }
    // Steep part of the branches near λ_H, sampled along θ.
    const double m = 0.5 * (spec.fixed.N - 2.0);
    const auto nt = static_cast<std::size_t>(kPerCell * (ta.count - 1));
    for (std::size_t k = 0; k <= nt; ++k) {
      const double t = t_lo + (t_hi - t_lo) * static_cast<double>(k) / nt;
      const double root = (t + 2.0) / (spec.fixed.q - 1.0) - m;
      probe(lambda_H - root * root, t);
    }
  }
  out.passed = out.stray_pairs == 0 && out.missed_samples == 0 && out.boundary_pairs > 0;
  return out;
}

nlohmann::json to_json(const BoundaryCheck& b) {
  return {{"boundary_pairs", b.boundary_pairs}, {"stray_pairs", b.stray_pairs},
          {"curve_samples", b.curve_samples},   {"missed_samples", b.missed_samples},
          {"worst_pair_distance", b.worst_pair_distance}, {"worst_curve_distance", b.worst_curve_distance},
          {"passed", b.passed}};
}

}  // namespace hardy
