#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Stationary 1D analysis of u'' + (u - u^3) - b = 0 (eps = 1).
namespace surfpat::one_dim {

struct Profile1D {
  std::vector<double> x;   // uniform, strictly increasing
  std::vector<double> u;
  std::vector<double> du;
};

struct IntegratorSettings {
  double abs_tolerance = 1e-10;
  double rel_tolerance = 1e-10;
  std::size_t samples = 401;       // grid points including both ends
  double blowup_threshold = 1e3;   // |u| beyond this aborts with Error{numerical}
  std::size_t max_steps = 2'000'000;
};

// Adaptive Dormand-Prince 5(4) integration of (u, u')' = (u', u^3 - u + b)
// from (x_begin, u_a, du_a), sampled on a uniform grid up to x_end.
Profile1D integrate_stationary(double u_a, double du_a, double b, double x_begin, double x_end,
                               const IntegratorSettings& settings = {});

// F(u) = -integral of f_m = -(u^2 - 1)^2 / 4 - b u, so that
// 1/2 (u')^2 + F(u) is constant along solutions and equals 0 on the kink.
double potential(double u, double b);

struct FirstIntegral {
  double constant = 0.0;  // C, evaluated at the first sample
  double drift = 0.0;     // max |1/2 u'^2 + F(u) - C| over the samples
};

FirstIntegral first_integral(const Profile1D& profile, double b);
double first_integral_at(double u, double du, double b);

// Radicand 2 (C - F(u)) = 2C + (1 - u^2)^2 / 2 + 2 b u of the implicit solution.
double quadrature_radicand(double u, double constant, double b);

// x(u) - a = integral from u_a to u of du / sqrt(2 (C - F(u))) for each u in
// the increasing grid. Endpoint zeros of the radicand are handled by
// tanh-sinh quadrature. Throws Error{domain} naming a u where the radicand is
// negative inside an integration range.
std::vector<double> quadrature_solution(double constant, double b, double u_a, std::span<const double> u_grid,
                                        double tolerance = 1e-12);

// b = 0 heteroclinic solution u = tanh(x / sqrt(2)).
double kink(double x);

// Exact residual u'' + u - u^3 of u = tanh(x / width).
double tanh_residual(double x, double width);

enum class Concavity { up, down, flat };
// Sign of the mean second difference of u over the profile.
Concavity concavity(const Profile1D& profile);
const char* to_string(Concavity c);

}  // namespace surfpat::one_dim
