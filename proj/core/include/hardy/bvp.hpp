#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hardy/exact.hpp"

namespace hardy {

struct AnnulusProblem {
  double r_a = 0.5;
  double r_b = 1.0;
  double g_a = 1.0;
  double g_b = 0.0;
  ProblemParams params;
};

struct NewtonOptions {
  int max_iterations = 100;
  double step_tol = 1e-12;      // sup of |δφ|/|φ| at convergence
  double residual_tol = 1e-10;  // normalized residual required on exit
};

// Discrete solution in s = log r, boundary nodes included.
struct GridSolution {
  std::vector<double> s;
  std::vector<double> phi;  // r^{(N-2)/2} u
  int iterations = 0;
  double residual = 0;
};

// Solves φ'' = (λ_H-λ)φ + e^{κs}φ^q on the given s-grid with Dirichlet
// values taken from the ends of `initial`, starting Newton from `initial`.
// Uniform stretches use the weighted three-point scheme
// (φ_{i+1}-2φ_i+φ_{i-1})/h² = (f_{i+1}+4f_i+f_{i-1})/6; nodes with unequal
// neighbour spacing fall back to the plain three-point formula.
GridSolution solve_on_grid(const ProblemParams& p, std::vector<double> s, std::vector<double> initial,
                           const NewtonOptions& opt = {});

struct AnnulusSolution {
  RadialFunction profile;  // zero boundary values are dropped
  GridSolution grid;
};

AnnulusSolution solve_annulus_detailed(const AnnulusProblem& ap, std::size_t nodes = 2048,
                                       const NewtonOptions& opt = {});
RadialFunction solve_annulus(const AnnulusProblem& ap, std::size_t nodes = 2048);

struct LadderOptions {
  std::size_t nodes_per_octave = 128;
  double ref_lo = 0.3;  // reference annulus [ref_lo R, ref_hi R]
  double ref_hi = 0.7;
  double monotone_tol = 1e-10;
  NewtonOptions newton;
};

struct SchemeTrace {
  std::string scheme;  // "approximate" or "gamma"
  ProblemParams params;
  double C = 0, R = 0, h = 0, gamma = 0;
  std::vector<double> k_values;    // inverse inner radii, doubling
  std::vector<double> sup_values;  // sup of u_k on the reference annulus
  std::vector<double> sup_diffs;   // sup |u_k - u_{k+1}| there (one fewer)
  double monotone_violation = 0;   // max (u_{k+1} - u_k)/u_k on common nodes
  double sandwich_violation = 0;   // max (u_k - barrier)/barrier
  RadialFunction limit;

  bool monotone(double tol = 1e-10) const { return monotone_violation <= tol; }
};

// Monotone scheme with inner data C r^{-Θ} on |x| = 1/k and constant outer
// data h on |x| = R, over a doubling k ladder from ⌈2/R⌉ to k_max.
SchemeTrace approximate_scheme(const ProblemParams& p, double C, double R, double h_val, double k_max,
                               const LadderOptions& opt = {});

// As above with inner data γΦ+ + CΦ- (Case M2).
SchemeTrace gamma_scheme(const ProblemParams& p, double gamma, double C, double R, double h_val, double k_max,
                         const LadderOptions& opt = {});

struct NonexistenceStep {
  double epsilon = 0;
  double sup_closed = 0;    // sup of the annulus solution, boundary included
  double sup_interior = 0;  // sup over the middle third in log r
  double max_ratio_to_barrier = 0;
};

struct NonexistenceReport {
  ProblemParams params;
  bool single_term = false;  // V_ε = ε r^{-p-} (θ = θ-)
  double certificate_min = 0;  // min of (-L V + r^θ V^q) r²/V over the grid, scaled
  bool certificate_passed = false;
  double r_a = 0, r_b = 0;
  std::vector<NonexistenceStep> steps;
  double scaling_spread = 0;  // max relative deviation of sup_closed/ε from its mean
  bool scaling_passed = false;
  bool bounded_by_barrier = false;
};

// Super-solution V_ε and the annulus solutions it bounds (Case N only).
double nonexistence_barrier(double eps, double r, const ProblemParams& p);
NonexistenceReport demonstrate_nonexistence(const ProblemParams& p, const std::vector<double>& eps_ladder = {1.0, 0.1, 0.01},
                                            double r_a = 1e-3, double r_b = 1.0);

nlohmann::json to_json(const SchemeTrace& t, bool include_profile = false);
nlohmann::json to_json(const NonexistenceReport& r);

}  // namespace hardy
