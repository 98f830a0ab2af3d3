#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hardy/asymptotics.hpp"

namespace hardy {

enum class Family { None, Single, OneParameter };
std::string_view to_string(Family f);

// One class of solutions in R^N \ {0} with its profiles at both ends. For
// the one-parameter family the constant is the family parameter γ and is
// left unset in the profiles.
struct SolutionClass {
  std::string name;  // "U0", "u_gamma" (M2) or "U_gamma" (M1)
  AsymptoticProfile near_zero;
  AsymptoticProfile at_infinity;
  bool parametrized = false;
};

struct StructureReport {
  ProblemParams params;
  CaseLabel label;
  bool exists = false;
  bool unique = false;
  Family family = Family::None;
  bool radially_symmetric = false;
  std::vector<SolutionClass> classes;
};

StructureReport solution_set(const ProblemParams& p);

nlohmann::json to_json(const StructureReport& r);

}  // namespace hardy
