#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "surfpat/mesh.hpp"
#include "surfpat/solver.hpp"

namespace surfpat {

// ---------------------------------------------------------------------------
// Initial data

// Independent uniform samples in [-amplitude, amplitude), one per vertex in
// index order. The stream is a fixed function of the seed on every platform.
PhaseField random_init(const TriangleMesh& mesh, std::uint64_t seed, double amplitude);

struct SupportRegion {
  Index center = 0;
  std::size_t radius_hops = 0;
  std::vector<Index> vertices;  // sorted
};

// All vertices within `hops` edges of the seed set, sorted.
std::vector<Index> hop_ball(const TriangleMesh& mesh, std::span<const Index> seeds, std::size_t hops);

// Random values on the hop ball around `center` (drawn in vertex index order,
// so a ball covering the mesh reproduces random_init), `background` elsewhere.
std::pair<PhaseField, SupportRegion> localized_init(const TriangleMesh& mesh, std::uint64_t seed, Index center,
                                                    std::size_t radius_hops, double amplitude, double background);

// ---------------------------------------------------------------------------
// Classification

enum class PatternClass { spots, inverted_spots, stripes, uniform, indeterminate };
std::string_view to_string(PatternClass c);

struct ComponentStats {
  std::size_t vertices = 0;
  double area = 0.0;
  double boundary_length = 0.0;
  double elongation() const noexcept { return area > 0.0 ? boundary_length * boundary_length / area : 0.0; }
};

// Thresholds of the pattern taxonomy. "spots" are islands of the negative
// phase in a positive sea (the b < 0 regime); "inverted spots" the reverse.
struct ClassifierSettings {
  double dead_band = 0.1;            // |u| below this is interface, not phase
  double uniform_fraction = 0.02;    // minority area below this: uniform
  double stripes_fraction = 0.35;    // minority area at or above this: stripes
  std::size_t min_spot_components = 3;
  double stripe_elongation = 40.0;   // boundary^2 / area; a flat disk is 4 pi
};

struct PatternReport {
  PatternClass label = PatternClass::indeterminate;
  double positive_fraction = 0.0;   // of the phase (non-interface) area
  double negative_fraction = 0.0;
  double interface_fraction = 0.0;  // of the total area
  int minority_sign = 0;            // -1, +1, or 0 when no phase area
  double minority_fraction = 0.0;
  double elongation = 0.0;          // area-weighted mean over minority components
  std::vector<ComponentStats> positive_components;
  std::vector<ComponentStats> negative_components;

  std::size_t minority_components() const noexcept {
    return minority_sign > 0 ? positive_components.size()
                             : (minority_sign < 0 ? negative_components.size() : 0);
  }
};

PatternReport classify(const TriangleMesh& mesh, const MassVector& mass, std::span<const double> u,
                       const ClassifierSettings& settings = {});

// "key = value" lines.
std::string to_text(const PatternReport& report);
// Single JSON object with the same content plus per-component arrays.
std::string to_json(const PatternReport& report);

// ---------------------------------------------------------------------------
// Locality and isometry comparison

struct LocalityScore {
  double inside_variance = 0.0;   // area-weighted, over the dilated region
  double outside_variance = 0.0;  // area-weighted, over the complement
  bool outside_defined = true;    // false when the dilated region covers the mesh
  std::size_t inside_vertices = 0;
  std::size_t outside_vertices = 0;
};

LocalityScore locality_score(const TriangleMesh& mesh, const MassVector& mass, std::span<const double> u,
                             const SupportRegion& region, std::size_t dilation_hops = 3);

struct MatchTolerances {
  double fraction = 0.05;  // absolute, on positive_fraction
  double count = 0.2;      // relative, on component counts per phase
};

struct PatternMatch {
  bool match = false;
  double fraction_difference = 0.0;
  double count_difference = 0.0;  // worst relative difference over both phases
};

PatternMatch compare_pattern_stats(const PatternReport& a, const PatternReport& b, const MatchTolerances& tol = {});

}  // namespace surfpat
