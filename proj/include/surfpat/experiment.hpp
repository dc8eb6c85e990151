#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "surfpat/config.hpp"
#include "surfpat/operators.hpp"
#include "surfpat/patterns.hpp"
#include "surfpat/solver.hpp"

namespace surfpat {

// Initial data, run, and analysis of one configuration.
struct Simulation {
  PhaseField initial;
  std::optional<SupportRegion> region;  // localized init only
  RunResult result;
  PatternReport report;
  std::optional<LocalityScore> locality;  // localized init only
};

PhaseField make_initial(const TriangleMesh& mesh, const RunConfig& config, std::optional<SupportRegion>* region);

Simulation simulate(const TriangleMesh& mesh, const SparseOperator& op, const RunConfig& config);
Simulation simulate(const TriangleMesh& mesh, const RunConfig& config);

struct SweepRow {
  double b = 0.0;
  bool ok = false;
  PatternClass label = PatternClass::indeterminate;
  double minority_fraction = 0.0;
  std::size_t component_count = 0;  // minority components
  double final_energy = 0.0;
  std::string error;  // set when !ok
};

// One simulation per b, sharing every other setting (and so the initial data).
// A failing row is recorded and the sweep continues.
std::vector<SweepRow> sweep(const TriangleMesh& mesh, const RunConfig& config, std::span<const double> b_values);

}  // namespace surfpat
