// hardy: command-line front end for the classification library.
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hardy/asymptotics.hpp"
#include "hardy/bvp.hpp"
#include "hardy/errors.hpp"
#include "hardy/exact.hpp"
#include "hardy/grid.hpp"
#include "hardy/radial.hpp"
#include "hardy/structure.hpp"
#include "hardy/sweep.hpp"

namespace {

using nlohmann::json;
using namespace hardy;

constexpr int kValidation = 2;
constexpr int kNumerical = 3;

void add_params(CLI::App* cmd, ProblemParams& p) {
  cmd->add_option("--N", p.N, "dimension (>= 3)")->required();
  cmd->add_option("--q", p.q, "exponent (> 1)")->required();
  cmd->add_option("--theta", p.theta, "weight exponent")->required();
  cmd->add_option("--lambda", p.lambda, "Hardy coefficient")->required();
}

bool wants_csv(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot open output file: " + path);
  return os;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

// JSON to stdout, or to --out when given.
void emit_or_write(const json& j, const std::string& out) {
  if (out.empty()) return emit(j);
  auto os = open_out(out);
  os << j.dump(2) << '\n';
}

// Profile-producing commands: with a .csv --out the profile goes there in
// the CSV convention and stdout keeps the report; otherwise the report
// carries the profile arrays.
void emit_profile(json report, const RadialFunction& f, const std::string& out) {
  if (!out.empty() && wants_csv(out)) {
    auto os = open_out(out);
    write_csv(os, f);
    report["out"] = out;
    return emit(report);
  }
  report["profile"] = {{"r", f.r}, {"u", f.u}, {"provenance", f.provenance}};
  emit_or_write(report, out);
}

int fail(int code, const std::string& kind, const std::string& message, const json& detail = json::object()) {
  emit({{"error", {{"kind", kind}, {"message", message}, {"detail", detail}}}, {"exit_code", code}});
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positive solutions of -Δu - λ|x|^-2 u + |x|^θ u^q = 0: classification and numerics"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help and exit");  // -h is taken by bvp --h
  app.set_help_all_flag("--help-all");

  ProblemParams p;
  std::string out;

  auto* classify_cmd = app.add_subcommand("classify", "case label of the parameters");
  auto* exponents_cmd = app.add_subcommand("exponents", "critical exponents");
  auto* structure_cmd = app.add_subcommand("structure", "structure of the solution set");
  for (auto* c : {classify_cmd, exponents_cmd, structure_cmd}) {
    add_params(c, p);
    c->add_option("--out", out, "write JSON here instead of stdout");
  }

  auto* exact_cmd = app.add_subcommand("exact-check", "finite-difference residual of a closed-form solution");
  add_params(exact_cmd, p);
  std::string family;
  double mu = 1.0, r_min = 1e-4, r_max = 1e4;
  std::size_t points = 512;
  std::string phi_branch = "plus";
  exact_cmd->add_option("--family", family, "u0, m2-example, m1-example or phi")
      ->required()
      ->check(CLI::IsMember({"u0", "m2-example", "m1-example", "phi"}));
  exact_cmd->add_option("--mu", mu, "family parameter");
  exact_cmd->add_option("--branch", phi_branch, "plus or minus (phi only)")->check(CLI::IsMember({"plus", "minus"}));
  exact_cmd->add_option("--r-min", r_min);
  exact_cmd->add_option("--r-max", r_max);
  exact_cmd->add_option("--points", points);
  exact_cmd->add_option("--out", out, "write the sampled profile (.csv) or the JSON report");

  auto* shoot_cmd = app.add_subcommand("shoot", "one-parameter family member by shooting (M1 via the Kelvin dual)");
  add_params(shoot_cmd, p);
  ShootSpec spec;
  shoot_cmd->add_option("--gamma", spec.gamma, "prescribed limit of u/Φ+ at 0 (M2) or u/Φ- at ∞ (M1)");
  shoot_cmd->add_option("--r-inner", spec.r_inner);
  shoot_cmd->add_option("--r-outer", spec.r_outer);
  shoot_cmd->add_option("--points", spec.points);
  shoot_cmd->add_option("--tol-match", spec.tol_match);
  shoot_cmd->add_option("--out", out, "write the profile (.csv) or the JSON report");

  auto* bvp_cmd = app.add_subcommand("bvp", "annulus ladders and the non-existence construction");
  add_params(bvp_cmd, p);
  std::string mode = "scheme";
  double C = 1.0, R = 1.0, h = 0.0, gamma = 1.0, k_max = 1048576.0, r_a = 1e-3, r_b = 1.0;
  std::size_t per_octave = 128;
  bvp_cmd->add_option("--mode", mode, "scheme, gamma or nonexist")->check(CLI::IsMember({"scheme", "gamma", "nonexist"}));
  bvp_cmd->add_option("--C", C, "inner super-solution constant");
  bvp_cmd->add_option("--R", R, "outer radius");
  bvp_cmd->add_option("--h", h, "outer boundary value");
  bvp_cmd->add_option("--gamma", gamma, "Φ+ coefficient (gamma mode)");
  bvp_cmd->add_option("--k-max", k_max, "largest inverse inner radius");
  bvp_cmd->add_option("--nodes-per-octave", per_octave);
  bvp_cmd->add_option("--r-a", r_a, "inner radius (nonexist mode)");
  bvp_cmd->add_option("--r-b", r_b, "outer radius (nonexist mode)");
  bvp_cmd->add_option("--out", out, "write the limit profile (.csv) or the JSON report");

  auto* fit_cmd = app.add_subcommand("fit", "asymptotic profile of a CSV profile");
  std::string in_path, end_name, member_name;
  FitWindow window;
  double tol_p = 0.01, tol_s = 0.05, tol_c = 0.1, fit_gamma = 1.0;
  fit_cmd->add_option("--in", in_path, "profile CSV")->required()->check(CLI::ExistingFile);
  fit_cmd->add_option("--end", end_name, "zero or infinity")->required()->check(CLI::IsMember({"zero", "infinity"}));
  fit_cmd->add_option("--decades", window.decades);
  fit_cmd->add_option("--trim", window.trim);
  fit_cmd->add_option("--member", member_name, "compare with the catalogue: u0, gamma, regular or ncase")
      ->check(CLI::IsMember({"u0", "gamma", "regular", "ncase"}));
  fit_cmd->add_option("--gamma", fit_gamma);
  fit_cmd->add_option("--tol-p", tol_p);
  fit_cmd->add_option("--tol-s", tol_s);
  fit_cmd->add_option("--tol-c", tol_c);
  fit_cmd->add_option("--out", out, "write JSON here instead of stdout");

  auto* reduce_cmd = app.add_subcommand("reduce", "divergence-form problem to the reduced parameters");
  DivergenceParams dp;
  reduce_cmd->add_option("--N", dp.N)->required();
  reduce_cmd->add_option("--q", dp.q)->required();
  reduce_cmd->add_option("--a", dp.a)->required();
  reduce_cmd->add_option("--b", dp.b)->required();
  reduce_cmd->add_option("--d", dp.d)->required();
  reduce_cmd->add_option("--out", out, "write JSON here instead of stdout");

  auto* sweep_cmd = app.add_subcommand("sweep", "parameter-space atlas");
  std::string spec_path;
  unsigned threads = 0;
  bool check_bounds = false;
  sweep_cmd->add_option("--spec", spec_path, "sweep spec JSON")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--out", out, "atlas CSV (JSON when the name does not end in .csv)");
  sweep_cmd->add_option("--threads", threads, "worker count (0: hardware concurrency)");
  sweep_cmd->add_flag("--check-boundaries", check_bounds, "compare a (lambda, theta) atlas with the analytic boundaries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kValidation, "usage", e.what());
  }

  try {
    if (*classify_cmd) {
      validate(p);
      json j = to_json(classify(p));
      j["params"] = to_json(p);
      emit_or_write(j, out);
    } else if (*exponents_cmd) {
      validate(p);
      emit_or_write({{"params", to_json(p)}, {"exponents", to_json(compute_exponents(p))}}, out);
    } else if (*structure_cmd) {
      emit_or_write(to_json(solution_set(p)), out);
    } else if (*exact_cmd) {
      validate(p);
      if (!(r_min > 0.0 && r_min < r_max)) throw ValidationError("need 0 < r-min < r-max");
      if (points < 16) throw ValidationError("need at least 16 points");
      const auto grid = log_grid(r_min, r_max, points);
      ResidualOptions ro;
      RadialFunction f;
      json extra = json::object();
      if (family == "u0") {
        f = sample(grid, [&](double r) { return u0_value(r, p); }, p);
      } else if (family == "phi") {
        ro.linear = true;
        f = phi_branch == "plus" ? sample(grid, [&](double r) { return phi_plus(r, p); }, p)
                                 : sample(grid, [&](double r) { return phi_minus(r, p); }, p);
        extra["branch"] = phi_branch;
      } else {
        const bool upper = family == "m2-example";
        f = sample(grid, [&](double r) { return upper ? example_family_m2(mu, r, p) : example_family_m1(mu, r, p); }, p);
        extra["mu"] = mu;
        extra["gamma"] = example_family_gamma(mu, p);
      }
      const auto res = residual(f, ro);
      json report{{"family", family},       {"params", to_json(p)},   {"max_residual", res.max_abs()},
                  {"points", points},       {"r_range", {r_min, r_max}}, {"linear", ro.linear}};
      report.update(extra);
      if (out.empty()) emit(report);
      else emit_profile(report, f, out);
    } else if (*shoot_cmd) {
      validate(p);
      const bool m1 = classify(p).major == MajorCase::M1;
      const auto res = m1 ? construct_U_gamma_detailed(spec, p) : shoot_u_gamma_detailed(spec, p);
      json report{{"params", to_json(p)},
                  {"gamma", spec.gamma},
                  {"r_range", {spec.r_inner, spec.r_outer}},
                  {"provenance", res.profile.provenance},
                  {"report", to_json(res.report)}};
      emit_profile(report, res.profile, out);
    } else if (*bvp_cmd) {
      validate(p);
      if (mode == "nonexist") {
        emit_or_write(to_json(demonstrate_nonexistence(p, {1.0, 0.1, 0.01}, r_a, r_b)), out);
      } else {
        LadderOptions lo;
        lo.nodes_per_octave = per_octave;
        const auto trace = mode == "scheme" ? approximate_scheme(p, C, R, h, k_max, lo)
                                            : gamma_scheme(p, gamma, C, R, h, k_max, lo);
        emit_profile(to_json(trace), trace.limit, out);
      }
    } else if (*fit_cmd) {
      std::ifstream is(in_path);
      const auto f = read_csv(is);
      const End end = end_from_string(end_name);
      json report{{"params", to_json(f.params)}, {"provenance", f.provenance}, {"in", in_path}};
      if (member_name.empty()) {
        report["fit"] = to_json(fit_profile(f, end, window));
      } else {
        const auto expected = expected_profile(f.params, member_from_string(member_name), end, fit_gamma);
        const auto chk = verify_profile(f, expected, tol_p, tol_s, tol_c, window);
        report["fit"] = to_json(chk.fitted);
        report["check"] = to_json(chk);
      }
      emit_or_write(report, out);
    } else if (*reduce_cmd) {
      const auto reduced = divergence_reduce(dp);
      const auto dc = divergence_case(dp);
      json j{{"input", {{"N", dp.N}, {"q", dp.q}, {"a", dp.a}, {"b", dp.b}, {"d", dp.d}}},
             {"reduced", to_json(reduced)},
             {"sigma", divergence_sigma(dp)},
             {"rho", divergence_rho(dp)},
             {"ell", divergence_ell(dp)},
             {"case", std::string(to_string(dc))},
             {"reduced_label", to_json(reduced_label(dc))}};
      if (dc != DivergenceCase::NoSolution) j["v0_exponent"] = divergence_sigma(dp);
      emit_or_write(j, out);
    } else if (*sweep_cmd) {
      std::ifstream is(spec_path);
      json raw;
      try {
        raw = json::parse(is);
      } catch (const json::parse_error& e) {
        throw ValidationError(std::string("sweep spec is not JSON: ") + e.what());
      }
      auto sspec = sweep_spec_from_json(raw);
      if (threads) sspec.threads = threads;
      const auto atlas = run_sweep(sspec);
      json summary{{"spec", to_json(sspec)}, {"cells", atlas.cells.size()}, {"seconds", atlas.seconds}};
      if (check_bounds) summary["boundaries"] = to_json(check_atlas_boundaries(atlas));
      if (!out.empty() && wants_csv(out)) {
        auto os = open_out(out);
        write_atlas_csv(os, atlas);
        summary["out"] = out;
        emit(summary);
      } else {
        json rows = json::array();
        for (const auto& c : atlas.cells)
          rows.push_back({{"coords", c.coords}, {"label", to_json(c.label)}, {"ell", c.ell},
                          {"lambda_star", c.lambda_star}, {"exists", c.exists}});
        summary["atlas"] = rows;
        emit_or_write(summary, out);
      }
    }
  } catch (const ValidationError& e) {
    return fail(kValidation, "validation", e.what());
  } catch (const NumericalFailure& e) {
    return fail(kNumerical, e.kind(), e.what(), e.detail());
  } catch (const std::exception& e) {
    return fail(kNumerical, "internal", e.what());
  }
  return 0;
}
