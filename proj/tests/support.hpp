#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "hardy/exact.hpp"

namespace testing {

inline const nlohmann::json& oracle() {
  static const nlohmann::json data = [] {
    std::ifstream is(HARDY_ORACLE_FILE);
    return nlohmann::json::parse(is);
  }();
  return data;
}

inline hardy::ProblemParams params_of(const nlohmann::json& t) {
  return {t[0].get<int>(), t[1].get<double>(), t[2].get<double>(), t[3].get<double>()};
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

// sup |f/g - 1| over the nodes of f lying inside [lo, hi], g resampled.
inline double sup_rel_diff(const hardy::RadialFunction& f, const hardy::RadialFunction& g, double lo, double hi) {
  std::vector<double> r;
  std::vector<double> fu;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.r[i] >= lo && f.r[i] <= hi && f.r[i] >= g.r.front() && f.r[i] <= g.r.back()) r.push_back(f.r[i]), fu.push_back(f.u[i]);
  const auto gs = hardy::resample(g, r);
  double m = 0;
  for (std::size_t i = 0; i < r.size(); ++i) m = std::max(m, std::abs(fu[i] / gs.u[i] - 1.0));
  return m;
}

}  // namespace testing
