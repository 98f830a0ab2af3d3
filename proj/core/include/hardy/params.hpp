#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace hardy {

// Coefficients of -Δu - λ|x|^-2 u + |x|^θ u^q = 0 in R^N \ {0}.
struct ProblemParams {
  int N = 3;
  double q = 2.0;
  double theta = 0.0;
  double lambda = 0.0;

  friend bool operator==(const ProblemParams&, const ProblemParams&) = default;
};

void validate(const ProblemParams& p);

// Relative tolerance for treating θ = θ± (and λ = λ_H) as exact equalities.
inline constexpr double kBoundaryTol = 1e-9;

struct CriticalExponents {
  double lambda_H = 0;
  double Theta = 0;
  double ell = 0;
  double lambda_star = 0;
  double q_crit = 0;
  double disc = 0;  // λ_H - λ, snapped to 0 at the Hardy threshold
  double theta_hat = 0;
  double Theta_hat = 0;
  double kappa = 0;  // exponent of e^{κs} in the log-variable form
  double half_dim = 0;  // (N-2)/2
  std::optional<double> p_minus, p_plus, theta_minus, theta_plus;

  bool at_hardy() const { return disc == 0.0; }
};

CriticalExponents compute_exponents(const ProblemParams& p);

enum class MajorCase { U, M1, M2, NCase };
enum class SubCase { None, Interior, LowerBoundary, UpperBoundary, DoubleBoundary };

struct CaseLabel {
  MajorCase major = MajorCase::U;
  SubCase subcase = SubCase::None;

  friend bool operator==(const CaseLabel&, const CaseLabel&) = default;
};

CaseLabel classify(const ProblemParams& p);
CaseLabel classify(const ProblemParams& p, const CriticalExponents& e);

ProblemParams kelvin_dual_params(const ProblemParams& p);

// |a - b| <= kBoundaryTol * max(1, |b|)
bool near_equal(double a, double b, double tol = kBoundaryTol);

std::string_view to_string(MajorCase m);
std::string_view to_string(SubCase s);
MajorCase major_from_string(std::string_view s);

nlohmann::json to_json(const ProblemParams& p);
nlohmann::json to_json(const CriticalExponents& e);
nlohmann::json to_json(const CaseLabel& c);

}  // namespace hardy
