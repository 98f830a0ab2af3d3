#include "hardy/exact.hpp"

#include <algorithm>
#include <cmath>
#include <math.h>  // boost 1.74 pchip calls isnan unqualified
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include <boost/math/interpolators/pchip.hpp>

#include "hardy/errors.hpp"

namespace hardy {

void RadialFunction::check() const {
  if (r.size() < 2) throw ValidationError("profile needs at least two nodes");
  if (u.size() != r.size()) throw ValidationError("profile grid and values differ in length");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0) || !std::isfinite(r[i])) throw ValidationError("profile radii must be positive");
    if (i > 0 && !(r[i] > r[i - 1])) throw ValidationError("profile radii must be strictly increasing");
    if (!(u[i] > 0.0) || !std::isfinite(u[i])) throw ValidationError("profile values must be positive");
  }
}

double u0_value(double r, const ProblemParams& p) {
  const auto e = compute_exponents(p);
  if (!(e.ell > 0.0)) throw ValidationError("U_0 requires ell > 0");
  if (!(r > 0.0)) throw ValidationError("r must be positive");
  return std::pow(e.ell, 1.0 / (p.q - 1.0)) * std::pow(r, -e.Theta);
}

double phi_plus(double r, const ProblemParams& p) {
  const auto e = compute_exponents(p);
  if (!e.p_plus) throw ValidationError("fundamental solutions require lambda <= lambda_H");
  if (!(r > 0.0)) throw ValidationError("r must be positive");
  if (e.at_hardy()) {
    if (!(r < 1.0)) throw ValidationError("log branch of Phi+ requires r < 1");
    return std::pow(r, -e.half_dim) * std::log(1.0 / r);
  }
  return std::pow(r, -*e.p_plus);
}

double phi_minus(double r, const ProblemParams& p) {
  const auto e = compute_exponents(p);
  if (!e.p_minus) throw ValidationError("fundamental solutions require lambda <= lambda_H");
  if (!(r > 0.0)) throw ValidationError("r must be positive");
  return std::pow(r, -*e.p_minus);
}

namespace {

struct FamilyData {
  double d;
  double ell;
  double qm1;
  double p_minus;
  double p_plus;
};

FamilyData family_data(const ProblemParams& p, bool upper) {
  const auto e = compute_exponents(p);
  if (!e.p_plus || e.at_hardy()) throw ValidationError("example families require lambda < lambda_H");
  const double d = std::sqrt(e.disc);
  const double target = upper ? *e.theta_plus + 4.0 * d : *e.theta_minus - 4.0 * d;
  if (!near_equal(p.theta, target)) {
    throw ValidationError(upper ? "m2 example requires theta = theta_+ + 4 sqrt(lambda_H - lambda)"
                                : "m1 example requires theta = theta_- - 4 sqrt(lambda_H - lambda)");
  }
  return {d, e.ell, p.q - 1.0, *e.p_minus, *e.p_plus};
}

}  // namespace

double example_family_m2(double mu, double r, const ProblemParams& p) {
  if (!(mu > 0.0) || !(r > 0.0)) throw ValidationError("mu and r must be positive");
  const auto f = family_data(p, true);
  const double inner = std::pow(mu, -2.0 * f.d) + std::pow(f.ell, -0.5) * std::pow(r, 2.0 * f.d);
  return std::pow(r, -f.p_plus) * std::pow(inner, -2.0 / f.qm1);
}

double example_family_m1(double mu, double r, const ProblemParams& p) {
  if (!(mu > 0.0) || !(r > 0.0)) throw ValidationError("mu and r must be positive");
  const auto f = family_data(p, false);
  const double inner = std::pow(mu, 2.0 * f.d) + std::pow(f.ell, -0.5) * std::pow(r, -2.0 * f.d);
  return std::pow(r, -f.p_minus) * std::pow(inner, -2.0 / f.qm1);
}

double example_family_gamma(double mu, const ProblemParams& p) {
  const auto e = compute_exponents(p);
  if (!e.p_plus || e.at_hardy()) throw ValidationError("example families require lambda < lambda_H");
  const double d = std::sqrt(e.disc);
  const double expo = 4.0 * d / (p.q - 1.0);
  if (near_equal(p.theta, *e.theta_plus + 4.0 * d)) return std::pow(mu, expo);
  if (near_equal(p.theta, *e.theta_minus - 4.0 * d)) return std::pow(mu, -expo);
  throw ValidationError("parameters do not carry an example family");
}

RadialFunction kelvin_transform(const RadialFunction& f) {
  f.check();
  const std::size_t n = f.size();
  RadialFunction g;
  g.params = kelvin_dual_params(f.params);
  g.provenance = "transform";
  g.r.resize(n);
  g.u.resize(n);
  const double n2 = f.params.N - 2.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = n - 1 - i;
    g.r[i] = 1.0 / f.r[j];
    g.u[i] = std::pow(f.r[j], n2) * f.u[j];
  }
  return g;
}

RadialFunction scale_T_mu(const RadialFunction& f, double mu) {
  f.check();
  if (!(mu > 0.0)) throw ValidationError("mu must be positive");
  const auto e = compute_exponents(f.params);
  RadialFunction g = f;
  g.provenance = "transform";
  const double factor = std::pow(mu, e.Theta);
  for (std::size_t i = 0; i < f.size(); ++i) {
    g.r[i] = f.r[i] / mu;
    g.u[i] = factor * f.u[i];
  }
  return g;
}

RadialFunction resample(const RadialFunction& f, const std::vector<double>& grid) {
  f.check();
  const double lo = f.r.front();
  const double hi = f.r.back();
  std::vector<double> x(f.size()), y(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    x[i] = std::log(f.r[i]);
    y[i] = std::log(f.u[i]);
  }
  using boost::math::interpolators::pchip;
  pchip<std::vector<double>> spline(std::move(x), std::move(y));
  RadialFunction g{grid, std::vector<double>(grid.size()), f.params, f.provenance};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid[i];
    if (r < lo * (1 - 1e-12) || r > hi * (1 + 1e-12)) throw ValidationError("resample grid leaves the profile span");
    const double s = std::clamp(std::log(r), std::log(lo), std::log(hi));
    g.u[i] = std::exp(spline(s));
  }
  return g;
}

void validate(const DivergenceParams& dp) {
  if (dp.N < 3) throw ValidationError("N must be at least 3");
  if (!(dp.q > 1.0)) throw ValidationError("q must be > 1");
  if (!std::isfinite(dp.a) || !std::isfinite(dp.b) || !std::isfinite(dp.d))
    throw ValidationError("a, b, d must be finite");
}

ProblemParams divergence_reduce(const DivergenceParams& dp) {
  validate(dp);
  return {dp.N, dp.q, dp.a * (1.0 + dp.q) + dp.b, dp.d + dp.a * (dp.N - 2.0 - dp.a)};
}

double divergence_sigma(const DivergenceParams& dp) {
  validate(dp);
  return (2.0 * dp.a + dp.b + 2.0) / (dp.q - 1.0);
}

double divergence_rho(const DivergenceParams& dp) {
  validate(dp);
  return dp.a - 0.5 * (dp.N - 2.0);
}

double divergence_ell(const DivergenceParams& dp) {
  const double sigma = divergence_sigma(dp);
  const double rho = divergence_rho(dp);
  return (sigma + rho) * (sigma + rho) - rho * rho + dp.d;
}

double divergence_solution_v0(double r, const DivergenceParams& dp) {
  const double ell = divergence_ell(dp);
  if (!(ell > 0.0)) throw ValidationError("v_0 requires ell > 0");
  if (!(r > 0.0)) throw ValidationError("r must be positive");
  return std::pow(ell, 1.0 / (dp.q - 1.0)) * std::pow(r, -divergence_sigma(dp));
}

DivergenceCase divergence_case(const DivergenceParams& dp) {
  const double sigma = divergence_sigma(dp);
  const double rho = divergence_rho(dp);
  const double ell = divergence_ell(dp);
  if (!(ell > 0.0)) return DivergenceCase::NoSolution;
  const double gap = rho * rho - dp.d;
  if (gap < -1e-12 * std::max(1.0, rho * rho)) return DivergenceCase::UniqueV0;
  if (std::abs(gap) <= 1e-12 * std::max(1.0, rho * rho))
    return sigma < -rho ? DivergenceCase::M12 : DivergenceCase::M22;
  return sigma + rho < 0.0 ? DivergenceCase::M11 : DivergenceCase::M21;
}

std::string_view to_string(DivergenceCase c) {
  switch (c) {
    case DivergenceCase::NoSolution: return "none";
    case DivergenceCase::UniqueV0: return "unique";
    case DivergenceCase::M11: return "M11";
    case DivergenceCase::M21: return "M21";
    case DivergenceCase::M12: return "M12";
    case DivergenceCase::M22: return "M22";
  }
  return "?";
}

CaseLabel reduced_label(DivergenceCase c) {
  switch (c) {
    case DivergenceCase::UniqueV0: return {MajorCase::U, SubCase::None};
    case DivergenceCase::M11:
    case DivergenceCase::M12: return {MajorCase::M1, SubCase::None};
    case DivergenceCase::M21:
    case DivergenceCase::M22: return {MajorCase::M2, SubCase::None};
    case DivergenceCase::NoSolution: break;
  }
  return {MajorCase::NCase, SubCase::None};
}

namespace {

double parse_double(const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin) throw ValidationError("not a number: " + text);
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const RadialFunction& f) {
  os << "# params N=" << f.params.N << " q=" << format_double(f.params.q)
     << " theta=" << format_double(f.params.theta) << " lambda=" << format_double(f.params.lambda)
     << " provenance=" << f.provenance << '\n';
  os << "r,u\n";
  for (std::size_t i = 0; i < f.size(); ++i) os << format_double(f.r[i]) << ',' << format_double(f.u[i]) << '\n';
}

RadialFunction read_csv(std::istream& is) {
  RadialFunction f;
  std::string line;
  bool have_meta = false, have_header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ss(line.substr(1));
      std::string tok;
      ss >> tok;
      if (tok != "params") continue;
      while (ss >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw ValidationError("malformed metadata token: " + tok);
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        if (key == "N") f.params.N = std::stoi(val);
        else if (key == "q") f.params.q = parse_double(val);
        else if (key == "theta") f.params.theta = parse_double(val);
        else if (key == "lambda") f.params.lambda = parse_double(val);
        else if (key == "provenance") {
          std::string rest;
          std::getline(ss, rest);
          f.provenance = val + rest;
          break;
        }
      }
      have_meta = true;
      continue;
    }
    if (!have_header) {
      if (line != "r,u") throw ValidationError("expected CSV header 'r,u'");
      have_header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ValidationError("malformed CSV row: " + line);
    f.r.push_back(parse_double(line.substr(0, comma)));
    f.u.push_back(parse_double(line.substr(comma + 1)));
  }
  if (!have_meta) throw ValidationError("CSV lacks the '# params' metadata line");
  validate(f.params);
  f.check();
  return f;
}

}  // namespace hardy
