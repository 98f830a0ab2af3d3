#include "hardy/grid.hpp"

#include <algorithm>
#include <cmath>

#include "hardy/errors.hpp"

namespace hardy {

std::vector<double> linspace(double a, double b, std::size_t n) {
  if (n < 2) throw ValidationError("linspace needs at least two points");
  std::vector<double> x(n);
  const double h = (b - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) x[i] = a + h * static_cast<double>(i);
  x.back() = b;
  return x;
}

std::vector<double> log_grid(double r_min, double r_max, std::size_t n) {
  if (!(r_min > 0.0) || !(r_max > r_min)) throw ValidationError("log_grid needs 0 < r_min < r_max");
  auto s = linspace(std::log(r_min), std::log(r_max), n);
  for (auto& v : s) v = std::exp(v);
  s.front() = r_min;
  s.back() = r_max;
  return s;
}

bool is_uniform_log(const std::vector<double>& r, double tol) {
  if (r.size() < 3) return true;
  const double h = (std::log(r.back()) - std::log(r.front())) / static_cast<double>(r.size() - 1);
  for (std::size_t i = 1; i < r.size(); ++i) {
    const double hi = std::log(r[i]) - std::log(r[i - 1]);
    if (std::abs(hi - h) > tol * std::abs(h) + 1e-13) return false;
  }
  return true;
}

std::vector<double> fornberg_weights(double x0, const std::vector<double>& x, int order) {
  const int n = static_cast<int>(x.size());
  const int m = order;
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

LogDerivatives log_derivatives(const std::vector<double>& r, const std::vector<double>& u) {
  const std::size_t n = r.size();
  if (n < 3 || u.size() != n) throw ValidationError("derivative stencil needs at least 3 matching nodes");
  LogDerivatives out;
  out.d1.assign(n, 0.0);
  out.d2.assign(n, 0.0);

  if (is_uniform_log(r) && n >= 5) {
    const std::size_t w = std::min<std::size_t>(5, (n - 1) / 2);
    const double h = (std::log(r.back()) - std::log(r.front())) / static_cast<double>(n - 1);
    std::vector<double> nodes(2 * w + 1);
    for (std::size_t k = 0; k < nodes.size(); ++k) nodes[k] = static_cast<double>(k) - static_cast<double>(w);
    const auto w1 = fornberg_weights(0.0, nodes, 1);
    const auto w2 = fornberg_weights(0.0, nodes, 2);
    for (std::size_t i = w; i + w < n; ++i) {
      double a = 0.0, b = 0.0;
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        a += w1[k] * u[i + k - w];
        b += w2[k] * u[i + k - w];
      }
      out.d1[i] = a / h;
      out.d2[i] = b / (h * h);
    }
    out.first = w;
    out.last = n - 1 - w;
    return out;
  }

  for (std::size_t i = 1; i + 1 < n; ++i) {
    const std::vector<double> nodes{std::log(r[i - 1]), std::log(r[i]), std::log(r[i + 1])};
    const auto w1 = fornberg_weights(nodes[1], nodes, 1);
    const auto w2 = fornberg_weights(nodes[1], nodes, 2);
    out.d1[i] = w1[0] * u[i - 1] + w1[1] * u[i] + w1[2] * u[i + 1];
    out.d2[i] = w2[0] * u[i - 1] + w2[1] * u[i] + w2[2] * u[i + 1];
  }
  out.first = 1;
  out.last = n - 2;
  return out;
}

}  // namespace hardy
