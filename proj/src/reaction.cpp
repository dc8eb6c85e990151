#include "surfpat/reaction.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "surfpat/error.hpp"

namespace surfpat {

namespace {

void check_params(const ReactionStepParams& p) {
  require(p.dt_half > 0.0 && std::isfinite(p.dt_half), ErrorKind::invalid_argument,
          "reaction step needs dt_half > 0");
  require(p.epsilon > 0.0 && std::isfinite(p.epsilon), ErrorKind::invalid_argument,
          "reaction step needs epsilon > 0");
}

// decay = exp(-2 tau / eps^2), growth = 1 - decay (via expm1 for small tau).
double flow(double u, double decay, double growth) {
  const double mag = std::abs(u);
  double out;
  if (mag <= 1.0) {
    // Radicand u^2 + (1 - u^2) decay >= u^2; rounding can still push the ratio a
    // hair above 1, which the exact map never does.
    const double radicand = mag * mag + (1.0 - mag * mag) * decay;
    assert(radicand > 0.0 || mag == 0.0);
    out = mag == 0.0 ? 0.0 : std::min(mag / std::sqrt(radicand), 1.0);
  } else if (mag > 1e150) {
    // u^2 would overflow; divide through by u^2 first.
    out = std::clamp(1.0 / std::sqrt(growth + decay / mag / mag), 1.0, mag);
  } else {
    // Radicand 1 + (u^2 - 1) growth >= 1, so the quotient cannot exceed |u|.
    const double radicand = 1.0 + (mag * mag - 1.0) * growth;
    out = std::max(mag / std::sqrt(radicand), 1.0);
  }
  return std::copysign(out, u);
}

}  // namespace

double reaction_flow(double u, double tau, double epsilon) {
  const double rate = 2.0 * tau / (epsilon * epsilon);
  return flow(u, std::exp(-rate), -std::expm1(-rate));
}

void reaction_half_step_inplace(std::span<double> u, const ReactionStepParams& params) {
  check_params(params);
  const double rate = 2.0 * params.dt_half / (params.epsilon * params.epsilon);
  const double decay = std::exp(-rate);
  const double growth = -std::expm1(-rate);
  for (std::size_t i = 0; i < u.size(); ++i) {
    require(std::isfinite(u[i]), ErrorKind::numerical,
            "non-finite value at vertex " + std::to_string(i) + " entering reaction step");
    u[i] = flow(u[i], decay, growth);
  }
}

std::vector<double> reaction_half_step(std::span<const double> u, const ReactionStepParams& params) {
  std::vector<double> out(u.begin(), u.end());
  reaction_half_step_inplace(out, params);
  return out;
}

bool reaction_step_bound(std::span<const double> u, const ReactionStepParams& params) {
  double in_max = 0.0;
  for (double v : u) in_max = std::max(in_max, std::abs(v));
  const auto out = reaction_half_step(u, params);
  double out_max = 0.0;
  for (double v : out) out_max = std::max(out_max, std::abs(v));
  return out_max <= std::max(in_max, 1.0);
}

}  // namespace surfpat
