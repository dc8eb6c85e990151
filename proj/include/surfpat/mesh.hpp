#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace surfpat {

using Index = std::uint32_t;
using Vec3 = std::array<double, 3>;
using Face = std::array<Index, 3>;

// Unordered vertex pair, stored with a < b.
struct Edge {
  Index a;
  Index b;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Raw vertex/face soup as read from disk. Nothing is checked.
struct MeshData {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
};

enum class MeshFormat { obj, off };

// Closed, edge-manifold triangle mesh. Immutable once built; every instance
// satisfies: indices in range, three distinct corners per face, every edge
// shared by exactly two faces, no face with area below
// 1e-12 * (bounding box diagonal)^2.
class TriangleMesh {
 public:
  // Throws Error{topology} naming the first boundary or non-manifold edge, or
  // Error{degenerate_geometry} naming the first near-zero-area face.
  static TriangleMesh from_data(MeshData data);

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t face_count() const noexcept { return faces_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const Vec3> vertices() const noexcept { return vertices_; }
  std::span<const Face> faces() const noexcept { return faces_; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  // One-ring N_i, sorted ascending.
  std::span<const Index> neighbors(Index v) const noexcept {
    return {ring_.data() + ring_offsets_[v], ring_.data() + ring_offsets_[v + 1]};
  }
  // Edge ids parallel to neighbors(v).
  std::span<const Index> neighbor_edges(Index v) const noexcept {
    return {ring_edges_.data() + ring_offsets_[v], ring_edges_.data() + ring_offsets_[v + 1]};
  }
  // Edge id of {i, j}; throws Error{invalid_argument} if i and j are not adjacent.
  Index edge_index(Index i, Index j) const;
  // Edge id opposite corner k of face f.
  Index opposite_edge(std::size_t f, int k) const noexcept { return face_edges_[3 * f + k]; }

  double face_area(std::size_t f) const noexcept;
  double total_area() const noexcept;
  double bounding_diagonal() const noexcept;
  double mean_edge_length() const noexcept;

  // Rigid motion x -> R x + t. R is row-major and assumed orthogonal.
  TriangleMesh transformed(const std::array<double, 9>& rotation, const Vec3& translation) const;

  MeshData data() const { return {vertices_, faces_}; }

 private:
  TriangleMesh() = default;

  std::vector<Vec3> vertices_;
  std::vector<Face> faces_;
  std::vector<Edge> edges_;
  std::vector<Index> face_edges_;
  std::vector<std::size_t> ring_offsets_;
  std::vector<Index> ring_;
  std::vector<Index> ring_edges_;
};

// Per-vertex lumped area A_i (the diagonal of the mass matrix).
struct MassVector {
  std::vector<double> values;
  double total() const noexcept;
};

// Cotangent weights w_ij, one per mesh edge in TriangleMesh::edges() order.
struct EdgeWeights {
  std::vector<double> values;
};

enum class AreaConvention {
  barycentric,    // one third of every incident face
  mixed_voronoi,  // Voronoi cell, with the obtuse-triangle fallback of Meyer et al.
};

MassVector vertex_areas(const TriangleMesh& mesh, AreaConvention convention = AreaConvention::barycentric);

// w_ij = cot(alpha_ij) + cot(beta_ij). Negative values on obtuse triangles are kept.
// Throws Error{degenerate_geometry} if an angle is 0 or pi to within 1e-12 (sine).
EdgeWeights cotan_weights(const TriangleMesh& mesh);

// Diagnostics on an unchecked soup. Never throws.
struct MeshDiagnostics {
  std::size_t vertex_count = 0;
  std::size_t face_count = 0;
  std::size_t edge_count = 0;
  std::vector<std::size_t> bad_index_faces;   // out of range or repeated corner
  std::vector<Edge> boundary_edges;           // one incident face
  std::vector<Edge> non_manifold_edges;       // three or more incident faces
  std::vector<Edge> inconsistent_orientation; // same directed edge used twice
  std::vector<std::size_t> degenerate_faces;  // min angle < 1e-6 rad or tiny area
  double obtuse_fraction = 0.0;
  double min_angle = 0.0;  // radians
  double max_angle = 0.0;
  long euler_characteristic = 0;

  bool closed_manifold() const noexcept {
    return bad_index_faces.empty() && boundary_edges.empty() && non_manifold_edges.empty() &&
           degenerate_faces.empty();
  }
};

MeshDiagnostics validate(const MeshData& data);
std::string to_text(const MeshDiagnostics& diag);

// ASCII OBJ (1-based, negative indices are relative) and OFF (0-based).
// Parse errors carry "path:line: reason".
MeshData read_mesh_data(const std::filesystem::path& path, MeshFormat format);
MeshData read_mesh_data(const std::filesystem::path& path);  // format from extension
TriangleMesh load_mesh(const std::filesystem::path& path, MeshFormat format);
TriangleMesh load_mesh(const std::filesystem::path& path);

void write_obj(const TriangleMesh& mesh, const std::filesystem::path& path);
void write_off(const TriangleMesh& mesh, const std::filesystem::path& path);

// Loop-style 1:4 refinement of an icosahedron projected to the sphere.
// Level L has 10 * 4^L + 2 vertices.
TriangleMesh make_icosphere(int level, double radius = 1.0);
// Regular tetrahedron with unit edge length, centered at the origin.
TriangleMesh make_tetrahedron();

}  // namespace surfpat
