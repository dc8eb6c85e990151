#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "surfpat/error.hpp"
#include "surfpat/mesh.hpp"
#include "surfpat/operators.hpp"

namespace surfpat {

struct SolverConfig {
  double b = 0.0;        // reaction offset in f_m(u) = u^3 - u + b
  double epsilon = 1.0;  // interface width
  double dt = 0.1;
  std::size_t max_iterations = 1000;
  std::uint64_t seed = 1;
  double stop_tolerance = 1e-7;  // relative inf-norm change per step; 0 disables
  std::size_t energy_log_stride = 1;
  LinearSolveSettings linear;

  // Throws Error{invalid_argument} naming the offending field.
  void validate() const;
};

struct PhaseField {
  std::vector<double> values;
  std::size_t time_level = 0;
};

struct EnergySample {
  std::size_t step = 0;
  double energy = 0.0;
  double max_abs_u = 0.0;
  double mean_u = 0.0;  // area-weighted
};

struct EnergyTrace {
  std::vector<EnergySample> samples;
};

// F_m(u) = (u^2 - 1)^2 / 4 + b u
double modified_potential(double u, double b);

// 1/2 u^T W u + sum_i A_i F_m(u_i) / eps^2
double discrete_energy(const SparseOperator& op, std::span<const double> u, double b, double epsilon);

EnergySample sample_energy(const SparseOperator& op, const PhaseField& u, double b, double epsilon);

// U^{n+1} = (B^{dt/2} o Ltilde^{dt} o B^{dt/2}) U^n, where B is the exact
// reaction flow and Ltilde is one backward-Euler step of u_t = Lap(u) - b/eps^2.
class StrangSplitting {
 public:
  StrangSplitting(const SparseOperator& op, const SolverConfig& config);

  PhaseField step(const PhaseField& state) const;
  void step_inplace(PhaseField& state) const;
  const SparseOperator& op() const noexcept { return *op_; }

 private:
  const SparseOperator* op_;
  SolverConfig config_;
  ImplicitDiffusion diffusion_;
};

PhaseField strang_step(const PhaseField& state, const SolverConfig& config, const SparseOperator& op);

struct RunResult {
  PhaseField field;
  EnergyTrace trace;
  bool stopped_early = false;  // relative change fell below stop_tolerance
};

// Raised when a substep fails mid-run; carries everything computed so far.
class RunError : public Error {
 public:
  RunError(const Error& cause, PhaseField last_good, EnergyTrace partial)
      : Error(cause.kind(), "step " + std::to_string(last_good.time_level + 1) + ": " + cause.what()),
        last_good_(std::move(last_good)),
        partial_(std::move(partial)) {}

  const PhaseField& last_good() const noexcept { return last_good_; }
  const EnergyTrace& partial_trace() const noexcept { return partial_; }

 private:
  PhaseField last_good_;
  EnergyTrace partial_;
};

RunResult run(const SparseOperator& op, const PhaseField& u0, const SolverConfig& config);
RunResult run(const TriangleMesh& mesh, const PhaseField& u0, const SolverConfig& config);

}  // namespace surfpat
