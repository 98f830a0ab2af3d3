#include "hardy/structure.hpp"

namespace hardy {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::None: return "none";
    case Family::Single: return "single";
    case Family::OneParameter: return "one_parameter";
  }
  return "?";
}

StructureReport solution_set(const ProblemParams& p) {
  validate(p);
  const auto e = compute_exponents(p);
  StructureReport rep;
  rep.params = p;
  rep.label = classify(p, e);
  if (rep.label.major == MajorCase::NCase || !(e.ell > 0.0)) return rep;

  rep.exists = true;
  rep.radially_symmetric = true;
  rep.classes.push_back({"U0", expected_profile(p, Member::U0, End::Zero),
                         expected_profile(p, Member::U0, End::Infinity), false});
  if (rep.label.major == MajorCase::U) {
    rep.unique = true;
    rep.family = Family::Single;
    return rep;
  }
  rep.family = Family::OneParameter;
  SolutionClass member{rep.label.major == MajorCase::M2 ? "u_gamma" : "U_gamma",
                       expected_profile(p, Member::Gamma, End::Zero),
                       expected_profile(p, Member::Gamma, End::Infinity), true};
  auto& free_end = rep.label.major == MajorCase::M2 ? member.near_zero : member.at_infinity;
  free_end.c.reset();
  rep.classes.push_back(member);
  return rep;
}

nlohmann::json to_json(const StructureReport& r) {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& c : r.classes) {
    classes.push_back({{"name", c.name},
                       {"near_zero", to_json(c.near_zero)},
                       {"at_infinity", to_json(c.at_infinity)},
                       {"parametrized", c.parametrized}});
  }
  return {{"params", to_json(r.params)},
          {"label", to_json(r.label)},
          {"exists", r.exists},
          {"unique", r.unique},
          {"family", std::string(to_string(r.family))},
          {"radially_symmetric", r.radially_symmetric},
          {"classes", classes}};
}

}  // namespace hardy
