#include "surfpat/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <sstream>

#include <json.hpp>

#include "geometry.hpp"
#include "surfpat/error.hpp"

namespace surfpat {

namespace {

// Uniform in [0, 1) from the top 53 bits; mt19937_64 output is fixed by the standard.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void check_amplitude(double amplitude) {
  require(amplitude > 0.0 && std::isfinite(amplitude), ErrorKind::invalid_argument, "amplitude must be positive");
}

}  // namespace

PhaseField random_init(const TriangleMesh& mesh, std::uint64_t seed, double amplitude) {
  check_amplitude(amplitude);
  std::mt19937_64 rng(seed);
  PhaseField u;
  u.values.resize(mesh.vertex_count());
  for (auto& v : u.values) v = amplitude * (2.0 * unit_uniform(rng) - 1.0);
  return u;
}

std::vector<Index> hop_ball(const TriangleMesh& mesh, std::span<const Index> seeds, std::size_t hops) {
  std::vector<std::size_t> depth(mesh.vertex_count(), SIZE_MAX);
  std::deque<Index> queue;
  for (Index s : seeds) {
    require(s < mesh.vertex_count(), ErrorKind::invalid_argument, "vertex " + std::to_string(s) + " out of range");
    if (depth[s] == SIZE_MAX) {
      depth[s] = 0;
      queue.push_back(s);
    }
  }
  std::vector<Index> out;
  while (!queue.empty()) {
    const Index v = queue.front();
    queue.pop_front();
    out.push_back(v);
    if (depth[v] == hops) continue;
    for (Index w : mesh.neighbors(v)) {
      if (depth[w] == SIZE_MAX) {
        depth[w] = depth[v] + 1;
        queue.push_back(w);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<PhaseField, SupportRegion> localized_init(const TriangleMesh& mesh, std::uint64_t seed, Index center,
                                                    std::size_t radius_hops, double amplitude, double background) {
  check_amplitude(amplitude);
  require(center < mesh.vertex_count(), ErrorKind::invalid_argument,
          "center vertex " + std::to_string(center) + " out of range");
  require(radius_hops >= 1, ErrorKind::invalid_argument, "radius must be at least 1 hop");
  require(std::isfinite(background), ErrorKind::invalid_argument, "background must be finite");

  SupportRegion region{center, radius_hops, hop_ball(mesh, std::span<const Index>(&center, 1), radius_hops)};
  PhaseField u;
  u.values.assign(mesh.vertex_count(), background);
  std::mt19937_64 rng(seed);
  for (Index v : region.vertices) u.values[v] = amplitude * (2.0 * unit_uniform(rng) - 1.0);
  return {std::move(u), std::move(region)};
}

std::string_view to_string(PatternClass c) {
  switch (c) {
    case PatternClass::spots: return "spots";
    case PatternClass::inverted_spots: return "inverted_spots";
    case PatternClass::stripes: return "stripes";
    case PatternClass::uniform: return "uniform";
    case PatternClass::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

namespace {

// Connected components of {v : member(v)} over mesh edges; -1 for non-members.
template <class Pred>
std::vector<int> label_components(const TriangleMesh& mesh, Pred member, int& count) {
  std::vector<int> comp(mesh.vertex_count(), -1);
  count = 0;
  std::vector<Index> stack;
  for (Index s = 0; s < mesh.vertex_count(); ++s) {
    if (comp[s] >= 0 || !member(s)) continue;
    comp[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      const Index v = stack.back();
      stack.pop_back();
      for (Index w : mesh.neighbors(v)) {
        if (comp[w] < 0 && member(w)) {
          comp[w] = count;
          stack.push_back(w);
        }
      }
    }
    ++count;
  }
  return comp;
}

// Per-component vertex count, lumped area, and length of the indicator's
// midpoint contour: a face with one or two member corners contributes the
// segment joining the midpoints of its two cut edges, which is half the
// length of the edge opposite the odd corner out.
std::vector<ComponentStats> component_stats(const TriangleMesh& mesh, const MassVector& mass,
                                            const std::vector<int>& comp, int count) {
  std::vector<ComponentStats> stats(static_cast<std::size_t>(count));
  for (Index v = 0; v < mesh.vertex_count(); ++v) {
    if (comp[v] < 0) continue;
    auto& s = stats[static_cast<std::size_t>(comp[v])];
    ++s.vertices;
    s.area += mass.values[v];
  }
  const auto pts = mesh.vertices();
  for (const auto& f : mesh.faces()) {
    for (int k = 0; k < 3; ++k) {
      const int id = comp[f[k]];
      if (id < 0) continue;
      // Visit each component once per face: at its lowest member corner.
      bool first = true;
      for (int j = 0; j < k; ++j) first = first && comp[f[j]] != id;
      if (!first) continue;
      int members = 0;
      int odd = -1;
      for (int j = 0; j < 3; ++j) members += comp[f[j]] == id ? 1 : 0;
      if (members == 3) continue;
      for (int j = 0; j < 3; ++j) {
        const bool in = comp[f[j]] == id;
        if ((members == 1 && in) || (members == 2 && !in)) odd = j;
      }
      const Vec3& p = pts[f[(odd + 1) % 3]];
      const Vec3& q = pts[f[(odd + 2) % 3]];
      stats[static_cast<std::size_t>(id)].boundary_length += 0.5 * norm(sub(q, p));
    }
  }
  return stats;
}

}  // namespace

PatternReport classify(const TriangleMesh& mesh, const MassVector& mass, std::span<const double> u,
                       const ClassifierSettings& settings) {
  require(u.size() == mesh.vertex_count() && mass.values.size() == mesh.vertex_count(), ErrorKind::dimension_mismatch,
          "classify: field, areas and mesh disagree in size");
  for (double v : u) require(std::isfinite(v), ErrorKind::numerical, "classify: field is not finite");

  const double band = settings.dead_band;
  double pos_area = 0.0, neg_area = 0.0, iface_area = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] > band) pos_area += mass.values[i];
    else if (u[i] < -band) neg_area += mass.values[i];
    else iface_area += mass.values[i];
  }

  PatternReport r;
  const double phase_area = pos_area + neg_area;
  const double total = phase_area + iface_area;
  r.interface_fraction = total > 0.0 ? iface_area / total : 0.0;
  if (phase_area > 0.0) {
    r.positive_fraction = pos_area / phase_area;
    r.negative_fraction = neg_area / phase_area;
  }

  int npos = 0, nneg = 0;
  const auto pos_comp = label_components(mesh, [&](Index v) { return u[v] > band; }, npos);
  const auto neg_comp = label_components(mesh, [&](Index v) { return u[v] < -band; }, nneg);
  r.positive_components = component_stats(mesh, mass, pos_comp, npos);
  r.negative_components = component_stats(mesh, mass, neg_comp, nneg);

  if (phase_area <= 0.0) {
    r.label = PatternClass::uniform;
    return r;
  }
  r.minority_sign = r.positive_fraction < r.negative_fraction ? 1 : -1;
  r.minority_fraction = std::min(r.positive_fraction, r.negative_fraction);
  const auto& minority = r.minority_sign > 0 ? r.positive_components : r.negative_components;
  double weighted = 0.0, area = 0.0;
  for (const auto& c : minority) {
    weighted += c.area * c.elongation();
    area += c.area;
  }
  r.elongation = area > 0.0 ? weighted / area : 0.0;

  if (r.minority_fraction < settings.uniform_fraction) {
    r.label = PatternClass::uniform;
  } else if (r.minority_fraction >= settings.stripes_fraction || r.elongation > settings.stripe_elongation) {
    r.label = PatternClass::stripes;
  } else if (minority.size() >= settings.min_spot_components) {
    r.label = r.minority_sign < 0 ? PatternClass::spots : PatternClass::inverted_spots;
  } else {
    r.label = PatternClass::indeterminate;
  }
  return r;
}

namespace {

struct Summary {
  double mean_area = 0.0;
  double max_area = 0.0;
  double mean_boundary = 0.0;
};

Summary summarize(const std::vector<ComponentStats>& comps) {
  Summary s;
  for (const auto& c : comps) {
    s.mean_area += c.area;
    s.mean_boundary += c.boundary_length;
    s.max_area = std::max(s.max_area, c.area);
  }
  if (!comps.empty()) {
    s.mean_area /= static_cast<double>(comps.size());
    s.mean_boundary /= static_cast<double>(comps.size());
  }
  return s;
}

}  // namespace

std::string to_text(const PatternReport& r) {
  std::ostringstream os;
  os.precision(10);
  const auto ps = summarize(r.positive_components);
  const auto ns = summarize(r.negative_components);
  os << "class = " << to_string(r.label) << '\n'
     << "positive_fraction = " << r.positive_fraction << '\n'
     << "negative_fraction = " << r.negative_fraction << '\n'
     << "interface_fraction = " << r.interface_fraction << '\n'
     << "minority_sign = " << r.minority_sign << '\n'
     << "minority_fraction = " << r.minority_fraction << '\n'
     << "minority_components = " << r.minority_components() << '\n'
     << "positive_components = " << r.positive_components.size() << '\n'
     << "negative_components = " << r.negative_components.size() << '\n'
     << "elongation = " << r.elongation << '\n'
     << "positive_mean_area = " << ps.mean_area << '\n'
     << "positive_max_area = " << ps.max_area << '\n'
     << "positive_mean_boundary = " << ps.mean_boundary << '\n'
     << "negative_mean_area = " << ns.mean_area << '\n'
     << "negative_max_area = " << ns.max_area << '\n'
     << "negative_mean_boundary = " << ns.mean_boundary << '\n';
  return os.str();
}

std::string to_json(const PatternReport& r) {
  auto comps = [](const std::vector<ComponentStats>& cs) {
    auto arr = nlohmann::json::array();
    for (const auto& c : cs) {
      arr.push_back({{"vertices", c.vertices}, {"area", c.area}, {"boundary_length", c.boundary_length},
                     {"elongation", c.elongation()}});
    }
    return arr;
  };
  const nlohmann::json j = {
      {"class", std::string(to_string(r.label))},
      {"positive_fraction", r.positive_fraction},
      {"negative_fraction", r.negative_fraction},
      {"interface_fraction", r.interface_fraction},
      {"minority_sign", r.minority_sign},
      {"minority_fraction", r.minority_fraction},
      {"minority_components", r.minority_components()},
      {"elongation", r.elongation},
      {"positive_components", comps(r.positive_components)},
      {"negative_components", comps(r.negative_components)},
  };
  return j.dump(2);
}

LocalityScore locality_score(const TriangleMesh& mesh, const MassVector& mass, std::span<const double> u,
                             const SupportRegion& region, std::size_t dilation_hops) {
  require(!region.vertices.empty(), ErrorKind::invalid_argument, "support region is empty");
  require(u.size() == mesh.vertex_count() && mass.values.size() == mesh.vertex_count(), ErrorKind::dimension_mismatch,
          "locality_score: field, areas and mesh disagree in size");
  const auto inside = hop_ball(mesh, region.vertices, dilation_hops);
  std::vector<char> is_inside(mesh.vertex_count(), 0);
  for (Index v : inside) is_inside[v] = 1;

  auto variance = [&](char want, std::size_t& count) {
    double area = 0.0, mean = 0.0;
    count = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (is_inside[i] != want) continue;
      area += mass.values[i];
      mean += mass.values[i] * u[i];
      ++count;
    }
    if (count == 0) return 0.0;
    mean /= area;
    double var = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (is_inside[i] != want) continue;
      const double d = u[i] - mean;
      var += mass.values[i] * d * d;
    }
    return var / area;
  };

  LocalityScore s;
  s.inside_variance = variance(1, s.inside_vertices);
  s.outside_variance = variance(0, s.outside_vertices);
  s.outside_defined = s.outside_vertices > 0;
  return s;
}

PatternMatch compare_pattern_stats(const PatternReport& a, const PatternReport& b, const MatchTolerances& tol) {
  auto rel = [](std::size_t x, std::size_t y) {
    const double hi = static_cast<double>(std::max(x, y));
    return hi > 0.0 ? std::abs(static_cast<double>(x) - static_cast<double>(y)) / hi : 0.0;
  };
  PatternMatch m;
  m.fraction_difference = std::abs(a.positive_fraction - b.positive_fraction);
  m.count_difference = std::max(rel(a.positive_components.size(), b.positive_components.size()),
                                rel(a.negative_components.size(), b.negative_components.size()));
  m.match = m.fraction_difference < tol.fraction && m.count_difference < tol.count;
  return m;
}

}  // namespace surfpat
