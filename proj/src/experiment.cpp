#include "surfpat/experiment.hpp"

namespace surfpat {

PhaseField make_initial(const TriangleMesh& mesh, const RunConfig& config, std::optional<SupportRegion>* region) {
  if (config.init.mode == InitMode::random) return random_init(mesh, config.solver.seed, config.init.amplitude);
  auto [field, support] = localized_init(mesh, config.solver.seed, config.init.center, config.init.radius_hops,
                                         config.init.amplitude, config.init.background);
  if (region != nullptr) *region = std::move(support);
  return field;
}

Simulation simulate(const TriangleMesh& mesh, const SparseOperator& op, const RunConfig& config) {
  config.validate();
  Simulation sim;
  sim.initial = make_initial(mesh, config, &sim.region);
  sim.result = run(op, sim.initial, config.solver);
  sim.report = classify(mesh, op.mass, sim.result.field.values, config.classifier);
  if (sim.region) sim.locality = locality_score(mesh, op.mass, sim.result.field.values, *sim.region, config.dilation_hops);
  return sim;
}

Simulation simulate(const TriangleMesh& mesh, const RunConfig& config) {
  config.validate();
  const SparseOperator op = build_operator(mesh, config.area);
  return simulate(mesh, op, config);
}

std::vector<SweepRow> sweep(const TriangleMesh& mesh, const RunConfig& config, std::span<const double> b_values) {
  std::vector<SweepRow> rows;
  rows.reserve(b_values.size());
  if (b_values.empty()) return rows;
  const SparseOperator op = build_operator(mesh, config.area);
  for (double b : b_values) {
    SweepRow row;
    row.b = b;
    try {
      RunConfig c = config;
      c.solver.b = b;
      const auto sim = simulate(mesh, op, c);
      row.ok = true;
      row.label = sim.report.label;
      row.minority_fraction = sim.report.minority_fraction;
      row.component_count = sim.report.minority_components();
      row.final_energy = sim.result.trace.samples.back().energy;
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace surfpat
