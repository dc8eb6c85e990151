#pragma once

#include <span>
#include <vector>

namespace surfpat {

// Substep u' = (u - u^3) / eps^2 over time dt_half (half of the Strang step).
struct ReactionStepParams {
  double dt_half = 0.0;
  double epsilon = 1.0;
};

// Exact flow of u' = (u - u^3) / eps^2 after time tau, starting from u:
//   u / sqrt(exp(-2 tau / eps^2) + u^2 (1 - exp(-2 tau / eps^2))).
// Odd, monotone, fixes -1, 0 and 1, never increases max(|u|, 1).
double reaction_flow(double u, double tau, double epsilon);

// Per-vertex reaction_flow. Throws Error{invalid_argument} on bad params and
// Error{numerical} on non-finite input.
std::vector<double> reaction_half_step(std::span<const double> u, const ReactionStepParams& params);
void reaction_half_step_inplace(std::span<double> u, const ReactionStepParams& params);

// True iff ||step(u)||_inf <= max(||u||_inf, 1).
bool reaction_step_bound(std::span<const double> u, const ReactionStepParams& params);

}  // namespace surfpat
