#pragma once

#include <array>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hardy/params.hpp"

namespace hardy {

// Quadratic coefficients of the rough barrier: A t² + B t + 1.
struct QuadraticCoeffs {
  double A = 0;
  double B = 0;
};

QuadraticCoeffs rough_coeffs(double alpha, const ProblemParams& p);

double h_alpha(double t, double alpha, const ProblemParams& p);

struct AlphaChoice {
  double alpha = 0;
  double c_alpha = 0;
  double inf_h = 0;
  double t_at_inf = 0;
  QuadraticCoeffs coeffs;
};

inline constexpr std::array<double, 8> kAlphaLadder{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};

// First α on the ladder meeting the case condition (U: B²-4A < 0;
// M1: A > 0 and both roots of the quadratic > 1), with c_α = (inf h_α)^{1/(q-1)}.
AlphaChoice select_alpha_c(const ProblemParams& p);

// Coefficients of the refined barriers; index 0 is the '+' set, 1 the '-' set.
struct RefinedCoeffs {
  double alpha = 0;
  double eta = 0;
  std::array<double, 2> A{}, B{}, C{}, Btilde{}, Ctilde{};
};

RefinedCoeffs refined_coeffs(double alpha, double eta, const ProblemParams& p);
bool refined_admissible(const RefinedCoeffs& k, double epsilon, double q);

// G±_η(t) of the refined barriers; sign = +1 or -1.
double refined_G(const RefinedCoeffs& k, int sign, double t, double q);

// Largest α on the ladder whose η -> 0 coefficient limits are positive.
double select_alpha_refined(const ProblemParams& p);

// Largest η = 2^-k (k = 0..60) passing refined_admissible.
double refined_eta0(double epsilon, double alpha, const ProblemParams& p);

enum class BarrierKind { WDelta, ZDelta, WPlus, WMinus };
std::string_view to_string(BarrierKind k);
BarrierKind barrier_kind_from_string(std::string_view s);
bool is_subsolution(BarrierKind k);

struct BarrierSpec {
  BarrierKind kind = BarrierKind::WDelta;
  double c = 1.0;
  double alpha = 0.01;
  double delta = 1.0;
  double epsilon = 0.1;
  double eta = 0.0;
  double nu = 1.0;
};

double eval_barrier(const BarrierSpec& spec, double r, const ProblemParams& p);

// log w and its first two derivatives in s = log r.
struct LogJet {
  double g = 0, g1 = 0, g2 = 0;
};
LogJet barrier_log_jet(const BarrierSpec& spec, double s, const ProblemParams& p);

// Natural certification grid in s = log r for the barrier's domain:
// (δ, δe^{span}] for w_δ, [δe^{-span}, δ) for z_δ, [-span, 0) for w±,
// with span reaching the t -> 0 regime of the barrier.
std::vector<double> barrier_log_grid(const BarrierSpec& spec, std::size_t n);

struct CertificationReport {
  BarrierSpec spec;
  ProblemParams params;
  std::string sense;  // "sub" or "super"
  double tol = 1e-9;
  double max_violation = 0;  // max signed violation relative to r^θ w^q
  std::size_t violations = 0;
  double s_min = 0, s_max = 0;
  bool passed = false;
};

// Evaluates -Lw + r^θ w^q exactly (analytic derivatives) at each s = log r
// of the grid, relative to r^θ w^q, and checks its sign.
CertificationReport certify_barrier_sign(const BarrierSpec& spec, const ProblemParams& p,
                                         const std::vector<double>& log_grid, double tol = 1e-9);

// C₀ with u <= C₀ |x|^{-Θ} for every sub-solution near the origin.
double apriori_constant(const ProblemParams& p);

nlohmann::json to_json(const AlphaChoice& a);
nlohmann::json to_json(const RefinedCoeffs& k);
nlohmann::json to_json(const CertificationReport& r);

}  // namespace hardy
