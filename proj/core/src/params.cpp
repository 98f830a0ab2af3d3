#include "hardy/params.hpp"

#include <algorithm>
#include <cmath>

#include "hardy/errors.hpp"

namespace hardy {

void validate(const ProblemParams& p) {
  if (p.N < 3) throw ValidationError("N must be at least 3");
  if (!(p.q > 1.0) || !std::isfinite(p.q)) throw ValidationError("q must be a finite number > 1");
  if (!std::isfinite(p.theta)) throw ValidationError("theta must be finite");
  if (!std::isfinite(p.lambda)) throw ValidationError("lambda must be finite");
}

bool near_equal(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

CriticalExponents compute_exponents(const ProblemParams& p) {
  validate(p);
  CriticalExponents e;
  const double n2 = p.N - 2.0;
  const double qm1 = p.q - 1.0;
  e.half_dim = 0.5 * n2;
  e.lambda_H = 0.25 * n2 * n2;
  e.Theta = (p.theta + 2.0) / qm1;
  e.ell = e.Theta * e.Theta - n2 * e.Theta + p.lambda;
  e.lambda_star = e.Theta * (n2 - e.Theta);
  e.q_crit = (p.N + 2.0 * p.theta + 2.0) / n2;
  e.theta_hat = n2 * p.q - (p.N + 2.0 + p.theta);
  e.Theta_hat = n2 - e.Theta;
  e.kappa = qm1 * (e.Theta - e.half_dim);
  e.disc = e.lambda_H - p.lambda;
  if (std::abs(e.disc) <= 1e-12 * std::max(1.0, e.lambda_H)) e.disc = 0.0;
  if (e.disc >= 0.0) {
    const double root = std::sqrt(e.disc);
    e.p_minus = e.half_dim - root;
    e.p_plus = e.half_dim + root;
    e.theta_minus = *e.p_minus * qm1 - 2.0;
    e.theta_plus = *e.p_plus * qm1 - 2.0;
  }
  return e;
}

CaseLabel classify(const ProblemParams& p) { return classify(p, compute_exponents(p)); }

CaseLabel classify(const ProblemParams& p, const CriticalExponents& e) {
  if (!e.theta_minus) return {MajorCase::U, SubCase::None};
  const double tm = *e.theta_minus;
  const double tp = *e.theta_plus;
  const bool on_lower = near_equal(p.theta, tm);
  const bool on_upper = near_equal(p.theta, tp);
  if (on_lower && on_upper) return {MajorCase::NCase, SubCase::DoubleBoundary};
  if (on_lower) return {MajorCase::NCase, SubCase::LowerBoundary};
  if (on_upper) return {MajorCase::NCase, SubCase::UpperBoundary};
  if (p.theta < tm) return {MajorCase::M1, SubCase::None};
  if (p.theta > tp) return {MajorCase::M2, SubCase::None};
  return {MajorCase::NCase, SubCase::Interior};
}

ProblemParams kelvin_dual_params(const ProblemParams& p) {
  validate(p);
  ProblemParams d = p;
  d.theta = (p.N - 2.0) * p.q - (p.N + 2.0 + p.theta);
  return d;
}

std::string_view to_string(MajorCase m) {
  switch (m) {
    case MajorCase::U: return "U";
    case MajorCase::M1: return "M1";
    case MajorCase::M2: return "M2";
    case MajorCase::NCase: return "NCASE";
  }
  return "?";
}

std::string_view to_string(SubCase s) {
  switch (s) {
    case SubCase::None: return "none";
    case SubCase::Interior: return "N_interior";
    case SubCase::LowerBoundary: return "N_lower_boundary";
    case SubCase::UpperBoundary: return "N_upper_boundary";
    case SubCase::DoubleBoundary: return "N_double_boundary";
  }
  return "?";
}

MajorCase major_from_string(std::string_view s) {
  if (s == "U") return MajorCase::U;
  if (s == "M1") return MajorCase::M1;
  if (s == "M2") return MajorCase::M2;
  if (s == "NCASE") return MajorCase::NCase;
  throw ValidationError("unknown case label: " + std::string(s));
}

nlohmann::json to_json(const ProblemParams& p) {
  return {{"N", p.N}, {"q", p.q}, {"theta", p.theta}, {"lambda", p.lambda}};
}

nlohmann::json to_json(const CriticalExponents& e) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::json {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  return {{"lambda_H", e.lambda_H},
          {"Theta", e.Theta},
          {"ell", e.ell},
          {"lambda_star", e.lambda_star},
          {"q_crit", e.q_crit},
          {"disc", e.disc},
          {"theta_hat", e.theta_hat},
          {"Theta_hat", e.Theta_hat},
          {"kappa", e.kappa},
          {"p_minus", opt(e.p_minus)},
          {"p_plus", opt(e.p_plus)},
          {"theta_minus", opt(e.theta_minus)},
          {"theta_plus", opt(e.theta_plus)}};
}

nlohmann::json to_json(const CaseLabel& c) {
  nlohmann::json j{{"major", std::string(to_string(c.major))}};
  j["subcase"] = c.subcase == SubCase::None ? nlohmann::json(nullptr)
                                            : nlohmann::json(std::string(to_string(c.subcase)));
  return j;
}

}  // namespace hardy
