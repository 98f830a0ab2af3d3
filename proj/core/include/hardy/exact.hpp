#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hardy/params.hpp"

namespace hardy {

// Sampled positive radial profile u(r).
struct RadialFunction {
  std::vector<double> r;
  std::vector<double> u;
  ProblemParams params;
  std::string provenance = "closed-form";

  std::size_t size() const { return r.size(); }
  // Throws ValidationError unless r is strictly increasing and positive,
  // u is positive, and the lengths agree (at least 2 nodes).
  void check() const;
};

template <class F>
RadialFunction sample(const std::vector<double>& grid, F&& fn, const ProblemParams& p,
                      std::string provenance = "closed-form") {
  RadialFunction f{grid, std::vector<double>(grid.size()), p, std::move(provenance)};
  for (std::size_t i = 0; i < grid.size(); ++i) f.u[i] = fn(grid[i]);
  return f;
}

double u0_value(double r, const ProblemParams& p);
double phi_plus(double r, const ProblemParams& p);
double phi_minus(double r, const ProblemParams& p);

// Closed-form one-parameter families, valid at θ = θ+ + 4√(λ_H-λ) (m2) and
// θ = θ- - 4√(λ_H-λ) (m1).
double example_family_m2(double mu, double r, const ProblemParams& p);
double example_family_m1(double mu, double r, const ProblemParams& p);
// Value of lim u/Φ+ at zero (m2) or lim u/Φ- at infinity (m1) for parameter mu.
double example_family_gamma(double mu, const ProblemParams& p);

RadialFunction kelvin_transform(const RadialFunction& f);
RadialFunction scale_T_mu(const RadialFunction& f, double mu);

// Monotone cubic interpolation in (log r, log u) onto grid, which must lie
// inside [f.r.front(), f.r.back()].
RadialFunction resample(const RadialFunction& f, const std::vector<double>& grid);

struct DivergenceParams {
  int N = 3;
  double a = 0;
  double b = 0;
  double d = 0;
  double q = 2;
};

void validate(const DivergenceParams& dp);
ProblemParams divergence_reduce(const DivergenceParams& dp);
double divergence_sigma(const DivergenceParams& dp);
double divergence_rho(const DivergenceParams& dp);
double divergence_ell(const DivergenceParams& dp);
double divergence_solution_v0(double r, const DivergenceParams& dp);

enum class DivergenceCase { NoSolution, UniqueV0, M11, M21, M12, M22 };
DivergenceCase divergence_case(const DivergenceParams& dp);
std::string_view to_string(DivergenceCase c);
// Label of the reduced problem that the divergence-form case corresponds to.
CaseLabel reduced_label(DivergenceCase c);

// CSV convention: one '#' metadata line, then "r,u", then rows with 17
// significant digits.
void write_csv(std::ostream& os, const RadialFunction& f);
RadialFunction read_csv(std::istream& is);
std::string format_double(double v);

}  // namespace hardy
