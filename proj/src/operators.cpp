#include "surfpat/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "surfpat/error.hpp"

namespace surfpat {

namespace {

void check_dim(std::size_t expected, std::size_t got, const char* what) {
  require(expected == got, ErrorKind::dimension_mismatch,
          std::string(what) + ": expected " + std::to_string(expected) + " values, got " + std::to_string(got));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  check_dim(n, x.size(), "matrix-vector product (input)");
  check_dim(n, y.size(), "matrix-vector product (output)");
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (auto k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += vals[k] * x[cols[k]];
    y[i] = s;
  }
}

double CsrMatrix::at(std::size_t i, std::size_t j) const {
  const auto first = cols.begin() + static_cast<std::ptrdiff_t>(row_ptr[i]);
  const auto last = cols.begin() + static_cast<std::ptrdiff_t>(row_ptr[i + 1]);
  const auto it = std::lower_bound(first, last, static_cast<Index>(j));
  return (it != last && *it == j) ? vals[static_cast<std::size_t>(it - cols.begin())] : 0.0;
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = at(i, i);
  return d;
}

SparseOperator assemble_stiffness(const TriangleMesh& mesh, const EdgeWeights& weights, MassVector mass) {
  const std::size_t n = mesh.vertex_count();
  check_dim(mesh.edge_count(), weights.values.size(), "edge weights");
  check_dim(n, mass.values.size(), "vertex areas");

  SparseOperator op;
  op.mass = std::move(mass);
  CsrMatrix& w = op.stiffness;
  w.n = n;
  w.row_ptr.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) w.row_ptr[i + 1] = w.row_ptr[i] + mesh.neighbors(static_cast<Index>(i)).size() + 1;
  w.cols.resize(w.row_ptr[n]);
  w.vals.resize(w.row_ptr[n]);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ring = mesh.neighbors(static_cast<Index>(i));
    const auto ids = mesh.neighbor_edges(static_cast<Index>(i));
    std::size_t k = w.row_ptr[i];
    std::size_t diag_slot = 0;
    double diag = 0.0;
    bool placed = false;
    for (std::size_t r = 0; r < ring.size(); ++r) {
      if (!placed && ring[r] > i) {
        diag_slot = k++;
        placed = true;
      }
      const double wij = 0.5 * weights.values[ids[r]];
      w.cols[k] = ring[r];
      w.vals[k++] = -wij;
      diag += wij;
    }
    if (!placed) diag_slot = k++;
    w.cols[diag_slot] = static_cast<Index>(i);
    w.vals[diag_slot] = diag;
  }
  return op;
}

SparseOperator build_operator(const TriangleMesh& mesh, AreaConvention convention) {
  return assemble_stiffness(mesh, cotan_weights(mesh), vertex_areas(mesh, convention));
}

std::vector<double> laplacian_apply(const SparseOperator& op, std::span<const double> u) {
  check_dim(op.dimension(), u.size(), "laplacian_apply");
  std::vector<double> out(u.size());
  op.stiffness.multiply(u, out);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -out[i] / op.mass.values[i];
  return out;
}

SolveReport cg_solve(const CsrMatrix& m, std::span<const double> rhs, std::span<double> x,
                     const LinearSolveSettings& settings) {
  const std::size_t n = m.n;
  check_dim(n, rhs.size(), "cg_solve right-hand side");
  check_dim(n, x.size(), "cg_solve solution");
  require(settings.tolerance > 0.0, ErrorKind::invalid_argument, "linear solve tolerance must be positive");
  const std::size_t max_iter = settings.max_iterations > 0 ? settings.max_iterations : 10 * std::max<std::size_t>(n, 1);

  SolveReport report;
  const double rhs_norm = norm2(rhs);
  if (rhs_norm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return report;
  }

  std::vector<double> inv_diag = m.diagonal();
  for (std::size_t i = 0; i < n; ++i) {
    require(inv_diag[i] > 0.0, ErrorKind::numerical,
            "system matrix has non-positive diagonal at row " + std::to_string(i) + "; reduce dt");
    inv_diag[i] = 1.0 / inv_diag[i];
  }

  std::vector<double> r(n), z(n), p(n), q(n);
  m.multiply(x, q);
  for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - q[i];
  double res = norm2(r) / rhs_norm;
  report.relative_residual = res;
  if (res <= settings.tolerance) return report;

  for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = dot(r, z);
  for (std::size_t it = 1; it <= max_iter; ++it) {
    m.multiply(p, q);
    const double curvature = dot(p, q);
    require(std::isfinite(curvature), ErrorKind::numerical, "NaN in conjugate-gradient iterate");
    require(curvature > 0.0, ErrorKind::numerical,
            "system matrix is not positive definite (obtuse mesh with large dt?); reduce dt");
    const double alpha = rz / curvature;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    res = norm2(r) / rhs_norm;
    report.iterations = it;
    report.relative_residual = res;
    require(std::isfinite(res), ErrorKind::numerical, "NaN in conjugate-gradient iterate");
    if (res <= settings.tolerance) {
      // The recursive residual drifts from the true one; confirm before returning.
      m.multiply(x, q);
      for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - q[i];
      res = norm2(r) / rhs_norm;
      report.relative_residual = res;
      if (res <= settings.tolerance) return report;
    }
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  throw Error(ErrorKind::non_convergence, "conjugate gradients did not converge in " + std::to_string(max_iter) +
                                              " iterations (relative residual " + std::to_string(res) + ")");
}

ImplicitDiffusion::ImplicitDiffusion(const SparseOperator& op, double dt) : op_(&op), dt_(dt) {
  require(dt > 0.0 && std::isfinite(dt), ErrorKind::invalid_argument, "dt must be positive");
  system_ = op.stiffness;
  for (std::size_t i = 0; i < system_.n; ++i) {
    for (auto k = system_.row_ptr[i]; k < system_.row_ptr[i + 1]; ++k) {
      system_.vals[k] *= dt;
      if (system_.cols[k] == i) system_.vals[k] += op.mass.values[i];
    }
  }
}

std::vector<double> ImplicitDiffusion::step(std::span<const double> u, double source,
                                            const LinearSolveSettings& settings, SolveReport* report) const {
  check_dim(op_->dimension(), u.size(), "diffusion step");
  const auto& mass = op_->mass.values;
  std::vector<double> rhs(u.size()), next(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    next[i] = u[i] - dt_ * source;  // exact for constants
    rhs[i] = mass[i] * next[i];
  }
  const auto rep = cg_solve(system_, rhs, next, settings);
  if (report != nullptr) *report = rep;
  return next;
}

std::vector<double> diffusion_step(const SparseOperator& op, std::span<const double> u, double dt, double b,
                                   double epsilon, const LinearSolveSettings& settings) {
  require(epsilon > 0.0 && std::isfinite(epsilon), ErrorKind::invalid_argument, "epsilon must be positive");
  return ImplicitDiffusion(op, dt).step(u, b / (epsilon * epsilon), settings);
}

}  // namespace surfpat
