#include "surfpat/one_dim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "surfpat/error.hpp"

namespace surfpat::one_dim {

namespace {

using State = std::array<double, 2>;

State rhs(const State& y, double b) { return {y[1], y[0] * y[0] * y[0] - y[0] + b}; }

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
  State out = y;
  for (const auto& [c, k] : terms) {
    out[0] += h * c * (*k)[0];
    out[1] += h * c * (*k)[1];
  }
  return out;
}

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

struct StepResult {
  State y;
  double error;  // scaled, accept when <= 1
};

StepResult dopri_step(const State& y, double h, double b, const IntegratorSettings& s) {
  const State k1 = rhs(y, b);
  const State k2 = rhs(axpy(y, h, {{a21, &k1}}), b);
  const State k3 = rhs(axpy(y, h, {{a31, &k1}, {a32, &k2}}), b);
  const State k4 = rhs(axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}), b);
  const State k5 = rhs(axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}), b);
  const State k6 = rhs(axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}), b);
  const State y5 = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
  const State k7 = rhs(y5, b);
  double err = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    const double scale = s.abs_tolerance + s.rel_tolerance * std::max(std::abs(y[i]), std::abs(y5[i]));
    err = std::max(err, std::abs(e) / scale);
  }
  return {y5, err};
}

}  // namespace

Profile1D integrate_stationary(double u_a, double du_a, double b, double x_begin, double x_end,
                               const IntegratorSettings& s) {
  require(std::isfinite(u_a) && std::isfinite(du_a) && std::isfinite(b), ErrorKind::invalid_argument,
          "initial data and b must be finite");
  require(std::isfinite(x_begin) && std::isfinite(x_end) && x_end > x_begin, ErrorKind::invalid_argument,
          "integration window must satisfy x_begin < x_end");
  require(s.samples >= 2, ErrorKind::invalid_argument, "need at least two samples");
  require(s.abs_tolerance > 0.0 && s.rel_tolerance >= 0.0, ErrorKind::invalid_argument, "bad tolerances");

  Profile1D p;
  const std::size_t n = s.samples;
  const double spacing = (x_end - x_begin) / static_cast<double>(n - 1);
  p.x.resize(n);
  for (std::size_t k = 0; k < n; ++k) p.x[k] = x_begin + spacing * static_cast<double>(k);
  p.x.back() = x_end;
  p.u.reserve(n);
  p.du.reserve(n);

  State y{u_a, du_a};
  p.u.push_back(y[0]);
  p.du.push_back(y[1]);
  double h = std::min(spacing, 1e-3);
  std::size_t steps = 0;
  for (std::size_t k = 1; k < n; ++k) {
    double x = p.x[k - 1];
    const double target = p.x[k];
    while (x < target) {
      const bool final_step = x + h >= target;
      const double step = final_step ? target - x : h;
      const auto trial = dopri_step(y, step, b, s);
      require(++steps <= s.max_steps, ErrorKind::non_convergence,
              "integrator exceeded " + std::to_string(s.max_steps) + " steps near x = " + std::to_string(x));
      const double err = std::isfinite(trial.error) ? trial.error : 1e10;
      if (err <= 1.0) {
        x = final_step ? target : x + step;
        y = trial.y;
        if (!(std::abs(y[0]) <= s.blowup_threshold)) {
          throw Error(ErrorKind::numerical, "solution blew up (|u| > " + std::to_string(s.blowup_threshold) +
                                                ") at x = " + std::to_string(x));
        }
      }
      const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      if (!final_step || err > 1.0) h = step * factor;
      require(h > 1e-14 * std::max(1.0, std::abs(x)), ErrorKind::non_convergence,
              "step size underflow at x = " + std::to_string(x));
    }
    p.u.push_back(y[0]);
    p.du.push_back(y[1]);
  }
  return p;
}

double potential(double u, double b) {
  const double w = u * u - 1.0;
  return -0.25 * w * w - b * u;
}

double first_integral_at(double u, double du, double b) { return 0.5 * du * du + potential(u, b); }

FirstIntegral first_integral(const Profile1D& p, double b) {
  FirstIntegral fi;
  if (p.u.empty()) return fi;
  require(p.u.size() == p.du.size(), ErrorKind::dimension_mismatch, "profile arrays differ in length");
  fi.constant = first_integral_at(p.u[0], p.du[0], b);
  for (std::size_t k = 0; k < p.u.size(); ++k) {
    fi.drift = std::max(fi.drift, std::abs(first_integral_at(p.u[k], p.du[k], b) - fi.constant));
  }
  return fi;
}

double quadrature_radicand(double u, double constant, double b) {
  const double w = 1.0 - u * u;
  return 2.0 * constant + 0.5 * w * w + 2.0 * b * u;
}

namespace {

// Tanh-sinh rule on [lo, hi] for 1/sqrt(R(u)). Nodes are placed by their
// distance to the nearer endpoint so integrable endpoint singularities are
// sampled without cancellation.
double tanh_sinh(double lo, double hi, double constant, double b, double tolerance) {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (lo + hi);
  const double scale = 2.0 * std::abs(constant) + 1.0 + 2.0 * std::abs(b) * std::max(std::abs(lo), std::abs(hi));
  constexpr double t_max = 3.5;
  constexpr double pi_2 = std::numbers::pi / 2.0;

  auto f = [&](double u, bool near_endpoint) -> double {
    const double r = quadrature_radicand(u, constant, b);
    if (r > 0.0) return 1.0 / std::sqrt(r);
    // Rounding can make R <= 0 right at a simple root of the endpoint.
    if (near_endpoint && r > -1e-12 * scale) return 0.0;
    throw Error(ErrorKind::domain, "radicand 2(C - F(u)) is negative at u = " + std::to_string(u));
  };
  auto term = [&](double t) {
    const double s = pi_2 * std::sinh(t);
    const double c = std::cosh(s);
    const double weight = pi_2 * std::cosh(t) / (c * c);
    const double gap = half * std::exp(-std::abs(s)) / c;  // distance to nearer endpoint
    const double u = t < 0.0 ? lo + gap : (t > 0.0 ? hi - gap : mid);
    if (u <= lo || u >= hi) return 0.0;
    return weight * f(u, gap < 1e-6 * half);
  };

  // Coarse interior scan so a negative dip between quadrature nodes is not missed.
  constexpr int kScan = 64;
  for (int j = 1; j < kScan; ++j) f(lo + (hi - lo) * j / kScan, false);

  double step = 1.0;
  double sum = term(0.0);
  for (double t = step; t <= t_max; t += step) sum += term(t) + term(-t);
  double estimate = half * step * sum;
  for (int level = 1; level <= 12; ++level) {
    step *= 0.5;
    for (double t = step; t <= t_max; t += 2.0 * step) sum += term(t) + term(-t);
    const double next = half * step * sum;
    const bool done = level >= 3 && std::abs(next - estimate) <= tolerance * std::max(1.0, std::abs(next));
    estimate = next;
    if (done) return estimate;
  }
  return estimate;
}

}  // namespace

std::vector<double> quadrature_solution(double constant, double b, double u_a, std::span<const double> u_grid,
                                        double tolerance) {
  require(std::isfinite(constant) && std::isfinite(b) && std::isfinite(u_a), ErrorKind::invalid_argument,
          "quadrature inputs must be finite");
  for (std::size_t k = 1; k < u_grid.size(); ++k) {
    require(u_grid[k] > u_grid[k - 1], ErrorKind::invalid_argument, "u grid must be strictly increasing");
  }
  std::vector<double> x(u_grid.size(), 0.0);
  // Integrate outward from u_a in both directions so each piece has at most
  // one singular endpoint shared with its neighbor.
  const auto split = std::lower_bound(u_grid.begin(), u_grid.end(), u_a) - u_grid.begin();
  double acc = 0.0, prev = u_a;
  for (auto k = static_cast<std::size_t>(split); k < u_grid.size(); ++k) {
    if (u_grid[k] > prev) acc += tanh_sinh(prev, u_grid[k], constant, b, tolerance);
    x[k] = acc;
    prev = u_grid[k];
  }
  acc = 0.0;
  prev = u_a;
  for (auto k = static_cast<std::ptrdiff_t>(split) - 1; k >= 0; --k) {
    const auto uk = u_grid[static_cast<std::size_t>(k)];
    acc -= tanh_sinh(uk, prev, constant, b, tolerance);
    x[static_cast<std::size_t>(k)] = acc;
    prev = uk;
  }
  return x;
}

double kink(double x) { return std::tanh(x / std::numbers::sqrt2); }

double tanh_residual(double x, double width) {
  const double u = std::tanh(x / width);
  const double second = -2.0 * u * (1.0 - u * u) / (width * width);
  return second + u - u * u * u;
}

Concavity concavity(const Profile1D& p) {
  if (p.u.size() < 3) return Concavity::flat;
  double sum = 0.0;
  for (std::size_t k = 1; k + 1 < p.u.size(); ++k) sum += p.u[k + 1] - 2.0 * p.u[k] + p.u[k - 1];
  const double mean = sum / static_cast<double>(p.u.size() - 2);
  if (mean > 0.0) return Concavity::up;
  if (mean < 0.0) return Concavity::down;
  return Concavity::flat;
}

const char* to_string(Concavity c) {
  switch (c) {
    case Concavity::up: return "up";
    case Concavity::down: return "down";
    case Concavity::flat: return "flat";
  }
  return "flat";
}

}  // namespace surfpat::one_dim
