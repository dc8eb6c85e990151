#include "surfpat/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "surfpat/reaction.hpp"

namespace surfpat {

void SolverConfig::validate() const {
  require(std::isfinite(b), ErrorKind::invalid_argument, "b must be finite");
  require(epsilon > 0.0 && std::isfinite(epsilon), ErrorKind::invalid_argument, "eps must be positive");
  require(dt > 0.0 && std::isfinite(dt), ErrorKind::invalid_argument, "dt must be positive");
  require(max_iterations >= 1, ErrorKind::invalid_argument, "iterations must be at least 1");
  require(stop_tolerance >= 0.0, ErrorKind::invalid_argument, "stop tolerance must be non-negative");
  require(energy_log_stride >= 1, ErrorKind::invalid_argument, "energy log stride must be at least 1");
  require(linear.tolerance > 0.0, ErrorKind::invalid_argument, "linear solve tolerance must be positive");
}

double modified_potential(double u, double b) {
  const double w = u * u - 1.0;
  return 0.25 * w * w + b * u;
}

double discrete_energy(const SparseOperator& op, std::span<const double> u, double b, double epsilon) {
  require(u.size() == op.dimension(), ErrorKind::dimension_mismatch,
          "discrete_energy: field has " + std::to_string(u.size()) + " values, operator " +
              std::to_string(op.dimension()));
  std::vector<double> wu(u.size());
  op.stiffness.multiply(u, wu);
  double dirichlet = 0.0, potential = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dirichlet += u[i] * wu[i];
    potential += op.mass.values[i] * modified_potential(u[i], b);
  }
  return 0.5 * dirichlet + potential / (epsilon * epsilon);
}

EnergySample sample_energy(const SparseOperator& op, const PhaseField& u, double b, double epsilon) {
  EnergySample s;
  s.step = u.time_level;
  s.energy = discrete_energy(op, u.values, b, epsilon);
  double weighted = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    s.max_abs_u = std::max(s.max_abs_u, std::abs(u.values[i]));
    weighted += op.mass.values[i] * u.values[i];
  }
  s.mean_u = weighted / op.mass.total();
  return s;
}

StrangSplitting::StrangSplitting(const SparseOperator& op, const SolverConfig& config)
    : op_(&op), config_(config), diffusion_(op, (config.validate(), config.dt)) {}

void StrangSplitting::step_inplace(PhaseField& state) const {
  require(state.values.size() == op_->dimension(), ErrorKind::dimension_mismatch,
          "strang_step: field has " + std::to_string(state.values.size()) + " values, mesh has " +
              std::to_string(op_->dimension()) + " vertices");
  const ReactionStepParams half{0.5 * config_.dt, config_.epsilon};
  reaction_half_step_inplace(state.values, half);
  state.values = diffusion_.step(state.values, config_.b / (config_.epsilon * config_.epsilon), config_.linear);
  reaction_half_step_inplace(state.values, half);
  ++state.time_level;
}

PhaseField StrangSplitting::step(const PhaseField& state) const {
  PhaseField next = state;
  step_inplace(next);
  return next;
}

PhaseField strang_step(const PhaseField& state, const SolverConfig& config, const SparseOperator& op) {
  return StrangSplitting(op, config).step(state);
}

RunResult run(const SparseOperator& op, const PhaseField& u0, const SolverConfig& config) {
  config.validate();
  require(u0.values.size() == op.dimension(), ErrorKind::dimension_mismatch,
          "initial field has " + std::to_string(u0.values.size()) + " values, mesh has " +
              std::to_string(op.dimension()) + " vertices");
  for (double v : u0.values) require(std::isfinite(v), ErrorKind::invalid_argument, "initial field is not finite");

  const StrangSplitting scheme(op, config);
  RunResult result;
  result.field = u0;
  result.trace.samples.push_back(sample_energy(op, result.field, config.b, config.epsilon));

  for (std::size_t n = 1; n <= config.max_iterations; ++n) {
    PhaseField next = result.field;
    try {
      scheme.step_inplace(next);
    } catch (const Error& e) {
      throw RunError(e, std::move(result.field), std::move(result.trace));
    }
    double change = 0.0, size = 0.0;
    for (std::size_t i = 0; i < next.values.size(); ++i) {
      change = std::max(change, std::abs(next.values[i] - result.field.values[i]));
      size = std::max(size, std::abs(next.values[i]));
    }
    result.field = std::move(next);
    const bool converged = change < config.stop_tolerance * size || (config.stop_tolerance > 0.0 && change == 0.0);
    const bool last = converged || n == config.max_iterations;
    if (n % config.energy_log_stride == 0 || last) {
      result.trace.samples.push_back(sample_energy(op, result.field, config.b, config.epsilon));
    }
    if (converged) {
      result.stopped_early = true;
      break;
    }
  }
  return result;
}

RunResult run(const TriangleMesh& mesh, const PhaseField& u0, const SolverConfig& config) {
  config.validate();
  const SparseOperator op = build_operator(mesh);
  return run(op, u0, config);
}

}  // namespace surfpat
