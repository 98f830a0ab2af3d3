#pragma once

#include <cstddef>
#include <vector>

namespace hardy {

// n radii spaced uniformly in log r, endpoints included.
std::vector<double> log_grid(double r_min, double r_max, std::size_t n);

// Uniform spacing in s between s_min and s_max inclusive.
std::vector<double> linspace(double a, double b, std::size_t n);

bool is_uniform_log(const std::vector<double>& r, double tol = 1e-9);

// Fornberg's recursion: weights for the derivative of the given order at x0
// using the nodes x.
std::vector<double> fornberg_weights(double x0, const std::vector<double>& x, int order);

// First and second derivatives with respect to s = log r. Uniform log grids
// use a central stencil of up to 11 points; other grids fall back to the
// three-point non-uniform formula. Entries outside [first, last] are unset.
struct LogDerivatives {
  std::vector<double> d1;
  std::vector<double> d2;
  std::size_t first = 0;
  std::size_t last = 0;
};

LogDerivatives log_derivatives(const std::vector<double>& r, const std::vector<double>& u);

}  // namespace hardy
