#pragma once
// Independent reference computations. Nothing here calls into the library's
// numerics; only mesh connectivity is shared.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include "surfpat/mesh.hpp"

namespace oracle {

// u' = (u - u^3) / eps^2 integrated with a Fehlberg 7(8) controlled stepper.
inline double reaction_ode(double u0, double tau, double eps) {
  namespace odeint = boost::numeric::odeint;
  double u = u0;
  auto rhs = [eps](const double& x, double& dxdt, double) { dxdt = (x - x * x * x) / (eps * eps); };
  odeint::integrate_adaptive(odeint::make_controlled<odeint::runge_kutta_fehlberg78<double>>(1e-14, 1e-14), rhs, u,
                             0.0, tau, tau / 100.0);
  return u;
}

// (u, u')' = (u', u^3 - u + b), sampled at the requested x values.
inline std::vector<double> stationary_ode(double u0, double du0, double b, const std::vector<double>& xs) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<double>;
  State s{u0, du0};
  auto rhs = [b](const State& y, State& dy, double) {
    dy[0] = y[1];
    dy[1] = y[0] * y[0] * y[0] - y[0] + b;
  };
  std::vector<double> out;
  auto obs = [&](const State& y, double) { out.push_back(y[0]); };
  odeint::integrate_times(odeint::make_controlled<odeint::runge_kutta_fehlberg78<State>>(1e-13, 1e-13), rhs, s,
                          xs.begin(), xs.end(), 1e-3, obs);
  return out;
}

// Root of u^3 - u + b in [lo, hi] by TOMS 748.
inline double cubic_root(double b, double lo, double hi) {
  auto f = [b](double u) { return u * u * u - u + b; };
  std::uintmax_t it = 200;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52), it);
  return 0.5 * (r.first + r.second);
}

// Stable (outer) root of u^3 - u + b for |b| small enough that it is unique
// on the majority side: the root on the side opposite to sign(b).
inline double stable_root(double b) { return b > 0 ? cubic_root(b, -3.0, -1.0 / std::sqrt(3.0)) : cubic_root(b, 1.0 / std::sqrt(3.0), 3.0); }

// Dense Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
    std::swap(a[k], a[p]);
    std::swap(rhs[k], rhs[p]);
    if (a[k][k] == 0.0) throw std::runtime_error("singular");
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = a[i][k] / a[k][k];
      if (m == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= m * a[k][j];
      rhs[i] -= m * rhs[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = rhs[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a[k][j] * x[j];
    x[k] = s / a[k][k];
  }
  return x;
}

// Cotan weight of edge (i, j) straight from the vertex positions.
inline double cot_at(const surfpat::Vec3& apex, const surfpat::Vec3& p, const surfpat::Vec3& q) {
  const double ax = p[0] - apex[0], ay = p[1] - apex[1], az = p[2] - apex[2];
  const double bx = q[0] - apex[0], by = q[1] - apex[1], bz = q[2] - apex[2];
  const double dot = ax * bx + ay * by + az * bz;
  const double cx = ay * bz - az * by, cy = az * bx - ax * bz, cz = ax * by - ay * bx;
  return dot / std::sqrt(cx * cx + cy * cy + cz * cz);
}

// Dense stiffness matrix assembled face by face.
inline std::vector<std::vector<double>> dense_stiffness(const surfpat::TriangleMesh& mesh) {
  const std::size_t n = mesh.vertex_count();
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  const auto v = mesh.vertices();
  for (const auto& f : mesh.faces()) {
    for (int k = 0; k < 3; ++k) {
      const auto apex = f[k], i = f[(k + 1) % 3], j = f[(k + 2) % 3];
      const double c = 0.5 * cot_at(v[apex], v[i], v[j]);  // P1 element stiffness
      w[i][j] -= c;
      w[j][i] -= c;
      w[i][i] += c;
      w[j][j] += c;
    }
  }
  return w;
}

// Connected components of the vertices with keep[v] true, by BFS over
// face corners (not the library's ring structure).
inline std::size_t count_components(const surfpat::TriangleMesh& mesh, const std::vector<bool>& keep) {
  const std::size_t n = mesh.vertex_count();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& f : mesh.faces())
    for (int k = 0; k < 3; ++k) {
      adj[f[k]].push_back(f[(k + 1) % 3]);
      adj[f[(k + 1) % 3]].push_back(f[k]);
    }
  std::vector<int> seen(n, 0);
  std::size_t count = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (!keep[s] || seen[s]) continue;
    ++count;
    std::vector<std::size_t> queue{s};
    seen[s] = 1;
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (auto nb : adj[queue[q]])
        if (keep[nb] && !seen[nb]) {
          seen[nb] = 1;
          queue.push_back(nb);
        }
  }
  return count;
}

}  // namespace oracle
