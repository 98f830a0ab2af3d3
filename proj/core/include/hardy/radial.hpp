#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hardy/exact.hpp"

namespace hardy {

// Normalized residual of u_ss + (N-2)u_s + λu - r^{θ+2}u^q (s = log r),
// which is r² times the radial form of the equation. Each node is divided
// by the largest of |u|, |u_ss|, |(N-2)u_s|, |λu|, r^{θ+2}u^q.
struct ResidualOptions {
  bool linear = false;  // drop the absorption term
};

struct ResidualSamples {
  std::vector<double> r;
  std::vector<double> value;

  double max_abs() const;
  // Max |value| after discarding the given fraction of nodes at each end.
  double max_abs_trimmed(double fraction) const;
};

ResidualSamples residual(const RadialFunction& f, const ResidualOptions& opt = {});

// κ in φ'' - (λ_H-λ)φ - e^{κs}φ^q = 0 with φ = r^{(N-2)/2}u.
double log_substitute(const ProblemParams& p);

struct LogState {
  double s = 0;
  double phi = 0;
  double dphi = 0;
};

LogState to_log_state(double r, double u, double du_dr, const ProblemParams& p);

enum class Outcome { Completed, Collapse, Escape };
std::string_view to_string(Outcome o);

struct IntegrateControls {
  double rel_tol = 1e-10;
  std::size_t samples = 512;  // output nodes uniform in s, endpoints included
  bool linear = false;
  double escape_factor = 10.0;
  double min_step = 1e-12;
};

struct Trajectory {
  RadialFunction profile;  // nodes reached before the run stopped
  Outcome outcome = Outcome::Completed;
  double s_stop = 0;
};

// Adaptive Dormand-Prince integration of the log-variable system from start
// to s_end (either direction). Stops on φ <= 0 or on u exceeding
// escape_factor times the envelope (U_0 when ℓ > 0, else the a priori bound).
Trajectory integrate(const LogState& start, double s_end, const ProblemParams& p,
                     const IntegrateControls& controls = {});

struct ShootSpec {
  double gamma = 1.0;
  double r_inner = 1e-8;
  double r_outer = 1e6;
  double tol_match = 1e-2;
  std::size_t points = 512;
};

struct BracketScan {
  bool found = false;
  std::string reason;
  double beta_lo = 0;
  double beta_hi = 0;
  double ansatz_ratio = 0;  // nonlinear/linear size of the ansatz at r_inner
  std::vector<double> betas;
  std::vector<std::string> classes;  // collapse | escape | inadmissible
};

// β scan over 0, ±10^k (k = -8..8) for the ansatz γΦ+ + βΦ- at r_inner.
BracketScan find_beta_bracket(const ShootSpec& spec, const ProblemParams& p);

struct ShootReport {
  double beta = 0;
  double far_amplitude = 0;  // u/U_0 - 1 at r_outer
  double s_match = 0;
  int bisections = 0;
  int newton_iterations = 0;
  double junction_mismatch = 0;
  double match_error = 0;
  double max_ratio_to_u0 = 0;
  BracketScan scan;
};

struct ShootResult {
  RadialFunction profile;
  ShootReport report;
};

ShootResult shoot_u_gamma_detailed(const ShootSpec& spec, const ProblemParams& p);
RadialFunction shoot_u_gamma(const ShootSpec& spec, const ProblemParams& p);

// M1 family member U_γ, via the Kelvin dual of u_γ.
ShootResult construct_U_gamma_detailed(const ShootSpec& spec, const ProblemParams& p);
RadialFunction construct_U_gamma(const ShootSpec& spec, const ProblemParams& p);

nlohmann::json to_json(const BracketScan& b);
nlohmann::json to_json(const ShootReport& r);

}  // namespace hardy
