#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hardy/params.hpp"

namespace hardy {

struct SweepAxis {
  std::string name;  // q, theta or lambda
  double start = 0;
  double stop = 0;
  std::size_t count = 2;

  double value(std::size_t i) const;
  double step() const { return (stop - start) / static_cast<double>(count - 1); }
};

inline const std::vector<std::string> kAtlasFields{"major", "subcase", "ell", "lambda_star", "exists"};

struct SweepSpec {
  std::vector<SweepAxis> axes;
  ProblemParams fixed;
  std::vector<std::string> outputs = kAtlasFields;
  unsigned threads = 0;  // 0: hardware concurrency
};

void validate(const SweepSpec& spec);
SweepSpec sweep_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SweepSpec& spec);

struct AtlasCell {
  std::vector<double> coords;  // one per axis
  ProblemParams params;
  CaseLabel label;
  double ell = 0;
  double lambda_star = 0;
  bool exists = false;
};

// Cells in row-major order, the last axis varying fastest.
struct Atlas {
  SweepSpec spec;
  std::vector<AtlasCell> cells;
  double seconds = 0;
};

Atlas run_sweep(const SweepSpec& spec);
void write_atlas_csv(std::ostream& os, const Atlas& atlas);

// For a two-axis (lambda, theta) atlas: every pair of neighbouring cells
// with different major labels must lie within one cell of θ = θ±(λ) or
// λ = λ_H, and every point of those curves inside the box within one cell
// of such a pair.
struct BoundaryCheck {
  std::size_t boundary_pairs = 0;
  std::size_t stray_pairs = 0;     // label change with no curve nearby
  std::size_t curve_samples = 0;
  std::size_t missed_samples = 0;  // curve point with no label change nearby
  double worst_pair_distance = 0;  // in cells, max norm
  double worst_curve_distance = 0;
  bool passed = false;
};

BoundaryCheck check_atlas_boundaries(const Atlas& atlas);

nlohmann::json to_json(const BoundaryCheck& b);

}  // namespace hardy
