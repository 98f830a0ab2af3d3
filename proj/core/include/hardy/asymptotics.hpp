#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hardy/exact.hpp"

namespace hardy {

enum class End { Zero, Infinity };
std::string_view to_string(End e);
End end_from_string(std::string_view s);

// u ~ c r^{-p} L^s with L = log(1/r) at zero and log r at infinity.
struct AsymptoticProfile {
  End end = End::Zero;
  double p = 0;
  double s = 0;
  std::optional<double> c;  // present when the constant is determined
  std::string source;       // catalogue row, e.g. "U0", "gamma", "N_lower"
};

// Solution classes of the catalogue:
//   U0          the explicit power solution (ℓ > 0);
//   Gamma       u_γ (M2) / U_γ (M1), γ the prescribed limit;
//   Regular     local solutions with the Φ- rate at zero (M2) or the
//               Φ+ rate at infinity (M1), constant free;
//   NCaseLocal  the Case N row for the sub-case of the parameters.
enum class Member { U0, Gamma, Regular, NCaseLocal };
std::string_view to_string(Member m);
Member member_from_string(std::string_view s);

AsymptoticProfile expected_profile(const ProblemParams& p, Member member, End end, double gamma = 1.0);

// Zero-end profile at p seen at infinity for the Kelvin dual, and back.
AsymptoticProfile kelvin_image(const AsymptoticProfile& a, int N);

struct FitWindow {
  double decades = 3.0;  // width of the fitted window
  double trim = 0.5;     // decades skipped at the chosen end
};

struct ProfileFit {
  AsymptoticProfile profile;
  double p_err = 0, s_err = 0, c_err = 0;  // standard errors (c relative)
  double r_lo = 0, r_hi = 0;
  std::size_t samples = 0;
};

// Stage 1 regresses the log-slope on {1, 1/L} for p; stage 2 regresses
// log u + p log r on {1, log L} for s and c.
ProfileFit fit_profile(const RadialFunction& f, End end, const FitWindow& window = {});

struct ProfileCheck {
  AsymptoticProfile expected;
  ProfileFit fitted;
  double dp = 0, ds = 0;
  // When the catalogue pins c, it is checked through the limit expression
  // u r^p L^{-s} (catalogue p and s) near the end of the window.
  std::optional<double> c_limit;
  std::optional<double> dc;  // relative
  bool p_ok = false, s_ok = false, c_ok = true;
  bool passed = false;
  std::vector<std::string> caveats;
};

ProfileCheck verify_profile(const RadialFunction& f, const AsymptoticProfile& expected, double tol_p, double tol_s,
                            double tol_c, const FitWindow& window = {});

nlohmann::json to_json(const AsymptoticProfile& a);
nlohmann::json to_json(const ProfileFit& f);
nlohmann::json to_json(const ProfileCheck& c);

}  // namespace hardy
