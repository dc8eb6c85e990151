#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "surfpat/mesh.hpp"

namespace surfpat {

// Compressed-row sparse matrix with sorted column indices per row.
struct CsrMatrix {
  std::size_t n = 0;
  std::vector<std::size_t> row_ptr;
  std::vector<Index> cols;
  std::vector<double> vals;

  void multiply(std::span<const double> x, std::span<double> y) const;
  double at(std::size_t i, std::size_t j) const;  // 0 outside the pattern
  std::vector<double> diagonal() const;
};

// Stiffness matrix W (positive diagonal, zero row sums) and lumped mass A.
// The discrete Laplace-Beltrami operator is -A^{-1} W.
struct SparseOperator {
  CsrMatrix stiffness;
  MassVector mass;

  std::size_t dimension() const noexcept { return stiffness.n; }
};

// W_ii = sum_j w_ij / 2, W_ij = -w_ij / 2 for j in N_i (the P1 stiffness matrix).
SparseOperator assemble_stiffness(const TriangleMesh& mesh, const EdgeWeights& weights, MassVector mass);
SparseOperator build_operator(const TriangleMesh& mesh, AreaConvention convention = AreaConvention::barycentric);

// Geometric Laplacian -A^{-1} W u: zero on constants, u.(A Lu) <= 0.
std::vector<double> laplacian_apply(const SparseOperator& op, std::span<const double> u);

struct LinearSolveSettings {
  double tolerance = 1e-9;         // relative residual
  std::size_t max_iterations = 0;  // 0 means 10 * n
};

struct SolveReport {
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

// Jacobi-preconditioned conjugate gradients. `x` carries the initial guess in
// and the solution out. Throws Error{non_convergence} with the final residual,
// Error{numerical} on NaN or on a non-positive curvature direction.
SolveReport cg_solve(const CsrMatrix& matrix, std::span<const double> rhs, std::span<double> x,
                     const LinearSolveSettings& settings = {});

// Backward-Euler step for u_t = Lap(u) - source:
//   (A + dt W) u' = A (u - dt * source).
// The system matrix is formed once and reused across steps.
class ImplicitDiffusion {
 public:
  ImplicitDiffusion(const SparseOperator& op, double dt);

  std::vector<double> step(std::span<const double> u, double source, const LinearSolveSettings& settings,
                           SolveReport* report = nullptr) const;
  double dt() const noexcept { return dt_; }

 private:
  const SparseOperator* op_;
  double dt_;
  CsrMatrix system_;
};

// One implicit diffusion step with the constant source b / eps^2.
std::vector<double> diffusion_step(const SparseOperator& op, std::span<const double> u, double dt, double b,
                                   double epsilon, const LinearSolveSettings& settings = {});

}  // namespace surfpat
