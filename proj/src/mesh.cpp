#include "surfpat/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string_view>

#include "geometry.hpp"
#include "surfpat/error.hpp"

namespace surfpat {

namespace {

constexpr double kAreaTolerance = 1e-12;    // relative to diagonal^2
constexpr double kSineTolerance = 1e-12;    // cotangent blow-up guard
constexpr double kNeedleAngle = 1e-6;       // radians, diagnostics only

struct HalfEdgeRecord {
  Index a, b;  // a < b
  std::size_t face;
  int corner;  // corner opposite the edge
  bool forward;  // face traverses a -> b
};

std::vector<HalfEdgeRecord> collect_half_edges(std::span<const Face> faces) {
  std::vector<HalfEdgeRecord> out;
  out.reserve(3 * faces.size());
  for (std::size_t f = 0; f < faces.size(); ++f) {
    for (int k = 0; k < 3; ++k) {
      const Index u = faces[f][(k + 1) % 3];
      const Index v = faces[f][(k + 2) % 3];
      out.push_back({std::min(u, v), std::max(u, v), f, k, u < v});
    }
  }
  std::sort(out.begin(), out.end(), [](const HalfEdgeRecord& x, const HalfEdgeRecord& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.face < y.face;
  });
  return out;
}

double bbox_diagonal(std::span<const Vec3> pts) {
  if (pts.empty()) return 0.0;
  Vec3 lo = pts[0], hi = pts[0];
  for (const auto& p : pts) {
    for (int d = 0; d < 3; ++d) {
      lo[d] = std::min(lo[d], p[d]);
      hi[d] = std::max(hi[d], p[d]);
    }
  }
  return norm(sub(hi, lo));
}

std::string edge_name(Index a, Index b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

}  // namespace

TriangleMesh TriangleMesh::from_data(MeshData data) {
  TriangleMesh m;
  m.vertices_ = std::move(data.vertices);
  m.faces_ = std::move(data.faces);
  const std::size_t nv = m.vertices_.size();

  require(!m.faces_.empty(), ErrorKind::topology, "mesh has no faces");
  for (std::size_t f = 0; f < m.faces_.size(); ++f) {
    const auto& t = m.faces_[f];
    for (Index i : t) {
      require(i < nv, ErrorKind::topology,
              "face " + std::to_string(f) + " references vertex " + std::to_string(i) + " (only " +
                  std::to_string(nv) + " vertices)");
    }
    require(t[0] != t[1] && t[1] != t[2] && t[0] != t[2], ErrorKind::topology,
            "face " + std::to_string(f) + " repeats a vertex");
  }
  for (const auto& p : m.vertices_) {
    require(std::isfinite(p[0]) && std::isfinite(p[1]) && std::isfinite(p[2]), ErrorKind::parse,
            "non-finite vertex coordinate");
  }

  const auto half = collect_half_edges(m.faces_);
  m.face_edges_.assign(3 * m.faces_.size(), 0);
  for (std::size_t i = 0; i < half.size();) {
    std::size_t j = i;
    while (j < half.size() && half[j].a == half[i].a && half[j].b == half[i].b) ++j;
    const std::size_t count = j - i;
    if (count == 1) {
      throw Error(ErrorKind::topology,
                  "boundary edge " + edge_name(half[i].a, half[i].b) + " (surface must be closed)");
    }
    if (count > 2) {
      throw Error(ErrorKind::topology, "non-manifold edge " + edge_name(half[i].a, half[i].b) + " shared by " +
                                           std::to_string(count) + " faces");
    }
    const auto id = static_cast<Index>(m.edges_.size());
    m.edges_.push_back({half[i].a, half[i].b});
    for (std::size_t k = i; k < j; ++k) m.face_edges_[3 * half[k].face + half[k].corner] = id;
    i = j;
  }

  std::vector<std::size_t> degree(nv, 0);
  for (const auto& e : m.edges_) {
    ++degree[e.a];
    ++degree[e.b];
  }
  for (std::size_t v = 0; v < nv; ++v) {
    require(degree[v] > 0, ErrorKind::topology, "vertex " + std::to_string(v) + " is not used by any face");
  }
  m.ring_offsets_.assign(nv + 1, 0);
  for (std::size_t v = 0; v < nv; ++v) m.ring_offsets_[v + 1] = m.ring_offsets_[v] + degree[v];
  m.ring_.resize(m.ring_offsets_[nv]);
  m.ring_edges_.resize(m.ring_offsets_[nv]);
  std::vector<std::size_t> fill(m.ring_offsets_.begin(), m.ring_offsets_.end() - 1);
  for (Index id = 0; id < m.edges_.size(); ++id) {
    const auto& e = m.edges_[id];
    m.ring_[fill[e.a]] = e.b;
    m.ring_edges_[fill[e.a]++] = id;
    m.ring_[fill[e.b]] = e.a;
    m.ring_edges_[fill[e.b]++] = id;
  }
  for (std::size_t v = 0; v < nv; ++v) {
    const auto lo = m.ring_offsets_[v], hi = m.ring_offsets_[v + 1];
    std::vector<std::pair<Index, Index>> tmp;
    tmp.reserve(hi - lo);
    for (auto k = lo; k < hi; ++k) tmp.emplace_back(m.ring_[k], m.ring_edges_[k]);
    std::sort(tmp.begin(), tmp.end());
    for (auto k = lo; k < hi; ++k) std::tie(m.ring_[k], m.ring_edges_[k]) = tmp[k - lo];
  }

  const double diag = bbox_diagonal(m.vertices_);
  const double min_area = kAreaTolerance * diag * diag;
  for (std::size_t f = 0; f < m.faces_.size(); ++f) {
    require(m.face_area(f) >= min_area, ErrorKind::degenerate_geometry,
            "face " + std::to_string(f) + " has area below " + std::to_string(min_area));
  }
  return m;
}

Index TriangleMesh::edge_index(Index i, Index j) const {
  require(i < vertex_count() && j < vertex_count(), ErrorKind::invalid_argument, "vertex index out of range");
  const auto ring = neighbors(i);
  const auto it = std::lower_bound(ring.begin(), ring.end(), j);
  require(it != ring.end() && *it == j, ErrorKind::invalid_argument,
          "vertices " + edge_name(i, j) + " are not adjacent");
  return neighbor_edges(i)[static_cast<std::size_t>(it - ring.begin())];
}

double TriangleMesh::face_area(std::size_t f) const noexcept {
  const auto& t = faces_[f];
  return triangle_area(vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]);
}

double TriangleMesh::total_area() const noexcept {
  double sum = 0.0;
  for (std::size_t f = 0; f < faces_.size(); ++f) sum += face_area(f);
  return sum;
}

double TriangleMesh::bounding_diagonal() const noexcept { return bbox_diagonal(vertices_); }

double TriangleMesh::mean_edge_length() const noexcept {
  double sum = 0.0;
  for (const auto& e : edges_) sum += norm(sub(vertices_[e.b], vertices_[e.a]));
  return edges_.empty() ? 0.0 : sum / static_cast<double>(edges_.size());
}

TriangleMesh TriangleMesh::transformed(const std::array<double, 9>& r, const Vec3& t) const {
  TriangleMesh m = *this;
  for (auto& p : m.vertices_) {
    const Vec3 q = p;
    for (int i = 0; i < 3; ++i) p[i] = r[3 * i] * q[0] + r[3 * i + 1] * q[1] + r[3 * i + 2] * q[2] + t[i];
  }
  return m;
}

double MassVector::total() const noexcept { return std::accumulate(values.begin(), values.end(), 0.0); }

MassVector vertex_areas(const TriangleMesh& mesh, AreaConvention convention) {
  MassVector out;
  out.values.assign(mesh.vertex_count(), 0.0);
  const auto pts = mesh.vertices();
  for (std::size_t f = 0; f < mesh.face_count(); ++f) {
    const auto& t = mesh.faces()[f];
    const double area = mesh.face_area(f);
    if (convention == AreaConvention::barycentric) {
      for (Index v : t) out.values[v] += area / 3.0;
      continue;
    }
    int obtuse = -1;
    std::array<double, 3> cot{};
    for (int k = 0; k < 3; ++k) {
      const Vec3& p = pts[t[k]];
      const Vec3 e1 = sub(pts[t[(k + 1) % 3]], p);
      const Vec3 e2 = sub(pts[t[(k + 2) % 3]], p);
      const double d = dot(e1, e2);
      if (d < 0.0) obtuse = k;
      cot[k] = d / norm(cross(e1, e2));
    }
    if (obtuse >= 0) {
      for (int k = 0; k < 3; ++k) out.values[t[k]] += (k == obtuse) ? area / 2.0 : area / 4.0;
      continue;
    }
    for (int k = 0; k < 3; ++k) {
      const Vec3& p = pts[t[k]];
      const int q = (k + 1) % 3, r = (k + 2) % 3;
      // |PR|^2 cot Q + |PQ|^2 cot R
      const double pr2 = norm2(sub(pts[t[r]], p));
      const double pq2 = norm2(sub(pts[t[q]], p));
      out.values[t[k]] += (pr2 * cot[q] + pq2 * cot[r]) / 8.0;
    }
  }
  return out;
}

EdgeWeights cotan_weights(const TriangleMesh& mesh) {
  EdgeWeights w;
  w.values.assign(mesh.edge_count(), 0.0);
  const auto pts = mesh.vertices();
  for (std::size_t f = 0; f < mesh.face_count(); ++f) {
    const auto& t = mesh.faces()[f];
    for (int k = 0; k < 3; ++k) {
      const Vec3& p = pts[t[k]];
      const Vec3 e1 = sub(pts[t[(k + 1) % 3]], p);
      const Vec3 e2 = sub(pts[t[(k + 2) % 3]], p);
      const double s = norm(cross(e1, e2));
      if (s <= kSineTolerance * norm(e1) * norm(e2)) {
        throw Error(ErrorKind::degenerate_geometry,
                    "face " + std::to_string(f) + " has an angle of 0 or pi at vertex " + std::to_string(t[k]));
      }
      w.values[mesh.opposite_edge(f, k)] += dot(e1, e2) / s;
    }
  }
  return w;
}

MeshDiagnostics validate(const MeshData& data) {
  MeshDiagnostics d;
  d.vertex_count = data.vertices.size();
  d.face_count = data.faces.size();
  std::vector<Face> good;
  std::vector<std::size_t> good_ids;
  for (std::size_t f = 0; f < data.faces.size(); ++f) {
    const auto& t = data.faces[f];
    const bool in_range = t[0] < d.vertex_count && t[1] < d.vertex_count && t[2] < d.vertex_count;
    const bool distinct = t[0] != t[1] && t[1] != t[2] && t[0] != t[2];
    if (!in_range || !distinct) {
      d.bad_index_faces.push_back(f);
    } else {
      good.push_back(t);
      good_ids.push_back(f);
    }
  }

  const auto half = collect_half_edges(good);
  for (std::size_t i = 0; i < half.size();) {
    std::size_t j = i;
    int forward = 0;
    while (j < half.size() && half[j].a == half[i].a && half[j].b == half[i].b) {
      forward += half[j].forward ? 1 : 0;
      ++j;
    }
    const std::size_t count = j - i;
    ++d.edge_count;
    const Edge e{half[i].a, half[i].b};
    if (count == 1) d.boundary_edges.push_back(e);
    if (count > 2) d.non_manifold_edges.push_back(e);
    if (count == 2 && forward != 1) d.inconsistent_orientation.push_back(e);
    i = j;
  }

  const double diag = bbox_diagonal(data.vertices);
  const double min_area = kAreaTolerance * diag * diag;
  std::size_t obtuse = 0;
  d.min_angle = good.empty() ? 0.0 : M_PI;
  d.max_angle = 0.0;
  for (std::size_t g = 0; g < good.size(); ++g) {
    const auto& t = good[g];
    double lo = M_PI, hi = 0.0;
    for (int k = 0; k < 3; ++k) {
      const Vec3& p = data.vertices[t[k]];
      const Vec3 e1 = sub(data.vertices[t[(k + 1) % 3]], p);
      const Vec3 e2 = sub(data.vertices[t[(k + 2) % 3]], p);
      const double angle = std::atan2(norm(cross(e1, e2)), dot(e1, e2));
      lo = std::min(lo, angle);
      hi = std::max(hi, angle);
    }
    const double area = triangle_area(data.vertices[t[0]], data.vertices[t[1]], data.vertices[t[2]]);
    if (lo < kNeedleAngle || area < min_area) d.degenerate_faces.push_back(good_ids[g]);
    if (hi > M_PI / 2.0) ++obtuse;
    d.min_angle = std::min(d.min_angle, lo);
    d.max_angle = std::max(d.max_angle, hi);
  }
  d.obtuse_fraction = good.empty() ? 0.0 : static_cast<double>(obtuse) / static_cast<double>(good.size());
  d.euler_characteristic = static_cast<long>(d.vertex_count) - static_cast<long>(d.edge_count) +
                           static_cast<long>(good.size());
  return d;
}

std::string to_text(const MeshDiagnostics& d) {
  constexpr std::size_t kListLimit = 20;
  std::ostringstream os;
  os.precision(10);
  os << "vertices = " << d.vertex_count << '\n'
     << "faces = " << d.face_count << '\n'
     << "edges = " << d.edge_count << '\n'
     << "euler_characteristic = " << d.euler_characteristic << '\n'
     << "bad_index_faces = " << d.bad_index_faces.size() << '\n'
     << "boundary_edges = " << d.boundary_edges.size() << '\n'
     << "non_manifold_edges = " << d.non_manifold_edges.size() << '\n'
     << "inconsistent_orientation_edges = " << d.inconsistent_orientation.size() << '\n'
     << "degenerate_faces = " << d.degenerate_faces.size() << '\n'
     << "obtuse_fraction = " << d.obtuse_fraction << '\n'
     << "min_angle_deg = " << d.min_angle * 180.0 / M_PI << '\n'
     << "max_angle_deg = " << d.max_angle * 180.0 / M_PI << '\n'
     << "status = " << (d.closed_manifold() ? "ok" : "defective") << '\n';
  auto list_edges = [&](const char* key, const std::vector<Edge>& edges) {
    for (std::size_t i = 0; i < std::min(edges.size(), kListLimit); ++i)
      os << key << " = " << edges[i].a << ' ' << edges[i].b << '\n';
  };
  auto list_faces = [&](const char* key, const std::vector<std::size_t>& faces) {
    for (std::size_t i = 0; i < std::min(faces.size(), kListLimit); ++i) os << key << " = " << faces[i] << '\n';
  };
  list_faces("bad_index_face", d.bad_index_faces);
  list_edges("boundary_edge", d.boundary_edges);
  list_edges("non_manifold_edge", d.non_manifold_edges);
  list_faces("degenerate_face", d.degenerate_faces);
  return os.str();
}

// ---------------------------------------------------------------------------
// File I/O

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

struct LineError {
  const std::filesystem::path& path;
  std::size_t line;
  [[noreturn]] void operator()(const std::string& why) const {
    throw Error(ErrorKind::parse, path.string() + ":" + std::to_string(line) + ": " + why);
  }
};

double parse_double(std::string_view tok, const LineError& fail) {
  double v = 0.0;
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) fail("bad number '" + std::string(tok) + "'");
  return v;
}

long parse_long(std::string_view tok, const LineError& fail) {
  long v = 0;
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end) fail("bad integer '" + std::string(tok) + "'");
  return v;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::io, "cannot open " + path.string());
  return in;
}

MeshData read_obj(const std::filesystem::path& path) {
  auto in = open_input(path);
  MeshData data;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const LineError fail{path, lineno};
    const auto toks = split_ws(line);
    if (toks.empty() || toks[0].front() == '#') continue;
    if (toks[0] == "v") {
      if (toks.size() < 4) fail("vertex needs three coordinates");
      data.vertices.push_back({parse_double(toks[1], fail), parse_double(toks[2], fail), parse_double(toks[3], fail)});
    } else if (toks[0] == "f") {
      if (toks.size() != 4) fail("only triangular faces are supported (got " + std::to_string(toks.size() - 1) + " corners)");
      Face face{};
      for (int k = 0; k < 3; ++k) {
        const auto tok = toks[k + 1];
        const long raw = parse_long(tok.substr(0, tok.find('/')), fail);
        const long n = static_cast<long>(data.vertices.size());
        const long idx = raw > 0 ? raw - 1 : n + raw;
        if (raw == 0 || idx < 0 || idx >= n) fail("face index " + std::to_string(raw) + " out of range");
        face[k] = static_cast<Index>(idx);
      }
      data.faces.push_back(face);
    }
    // vt, vn, g, o, s, usemtl, mtllib: ignored
  }
  return data;
}

MeshData read_off(const std::filesystem::path& path) {
  auto in = open_input(path);
  MeshData data;
  std::string line;
  std::size_t lineno = 0;
  enum class Stage { header, counts, vertices, faces, done } stage = Stage::header;
  std::size_t nv = 0, nf = 0;
  while (std::getline(in, line) && stage != Stage::done) {
    ++lineno;
    const LineError fail{path, lineno};
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (stage == Stage::header) {
      if (toks[0] != "OFF") fail("missing OFF header");
      toks.erase(toks.begin());
      stage = Stage::counts;
      if (toks.empty()) continue;
    }
    if (stage == Stage::counts) {
      if (toks.size() < 2) fail("expected vertex and face counts");
      const long v = parse_long(toks[0], fail), f = parse_long(toks[1], fail);
      if (v < 0 || f < 0) fail("negative count");
      nv = static_cast<std::size_t>(v);
      nf = static_cast<std::size_t>(f);
      data.vertices.reserve(nv);
      data.faces.reserve(nf);
      stage = nv > 0 ? Stage::vertices : (nf > 0 ? Stage::faces : Stage::done);
      continue;
    }
    if (stage == Stage::vertices) {
      if (toks.size() < 3) fail("vertex needs three coordinates");
      data.vertices.push_back({parse_double(toks[0], fail), parse_double(toks[1], fail), parse_double(toks[2], fail)});
      if (data.vertices.size() == nv) stage = nf > 0 ? Stage::faces : Stage::done;
      continue;
    }
    const long corners = parse_long(toks[0], fail);
    if (corners != 3) fail("only triangular faces are supported (got " + std::to_string(corners) + " corners)");
    if (toks.size() < 4) fail("face line too short");
    Face face{};
    for (int k = 0; k < 3; ++k) {
      const long idx = parse_long(toks[k + 1], fail);
      if (idx < 0 || idx >= static_cast<long>(nv)) fail("face index " + std::to_string(idx) + " out of range");
      face[k] = static_cast<Index>(idx);
    }
    data.faces.push_back(face);
    if (data.faces.size() == nf) stage = Stage::done;
  }
  if (stage != Stage::done) {
    throw Error(ErrorKind::parse, path.string() + ": unexpected end of file (" + std::to_string(data.vertices.size()) +
                                      "/" + std::to_string(nv) + " vertices, " + std::to_string(data.faces.size()) +
                                      "/" + std::to_string(nf) + " faces)");
  }
  return data;
}

MeshFormat format_from_extension(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".obj") return MeshFormat::obj;
  if (ext == ".off") return MeshFormat::off;
  throw Error(ErrorKind::invalid_argument, "unknown mesh extension '" + ext + "' (expected .obj or .off)");
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  require(out.good(), ErrorKind::io, "cannot write " + path.string());
  out.precision(17);
  return out;
}

}  // namespace

MeshData read_mesh_data(const std::filesystem::path& path, MeshFormat format) {
  return format == MeshFormat::obj ? read_obj(path) : read_off(path);
}

MeshData read_mesh_data(const std::filesystem::path& path) { return read_mesh_data(path, format_from_extension(path)); }

TriangleMesh load_mesh(const std::filesystem::path& path, MeshFormat format) {
  return TriangleMesh::from_data(read_mesh_data(path, format));
}

TriangleMesh load_mesh(const std::filesystem::path& path) { return load_mesh(path, format_from_extension(path)); }

void write_obj(const TriangleMesh& mesh, const std::filesystem::path& path) {
  auto out = open_output(path);
  for (const auto& p : mesh.vertices()) out << "v " << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
  for (const auto& f : mesh.faces()) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  require(out.good(), ErrorKind::io, "write failed: " + path.string());
}

void write_off(const TriangleMesh& mesh, const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "OFF\n" << mesh.vertex_count() << ' ' << mesh.face_count() << " 0\n";
  for (const auto& p : mesh.vertices()) out << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
  for (const auto& f : mesh.faces()) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  require(out.good(), ErrorKind::io, "write failed: " + path.string());
}

// ---------------------------------------------------------------------------
// Generators

TriangleMesh make_icosphere(int level, double radius) {
  require(level >= 0 && level <= 8, ErrorKind::invalid_argument, "icosphere level must be in [0, 8]");
  require(radius > 0.0, ErrorKind::invalid_argument, "icosphere radius must be positive");
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  MeshData d;
  d.vertices = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  d.faces = {{0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
             {11, 10, 2}, {10, 7, 6}, {7, 1, 8}, {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8},
             {3, 8, 9}, {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};
  auto project = [](Vec3 p) {
    const double n = norm(p);
    return Vec3{p[0] / n, p[1] / n, p[2] / n};
  };
  for (auto& p : d.vertices) p = project(p);
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<Index, Index>, Index> mid;
    auto midpoint = [&](Index a, Index b) {
      const auto key = std::minmax(a, b);
      if (auto it = mid.find(key); it != mid.end()) return it->second;
      const Vec3 p = project(scale(add(d.vertices[a], d.vertices[b]), 0.5));
      const auto id = static_cast<Index>(d.vertices.size());
      d.vertices.push_back(p);
      mid.emplace(key, id);
      return id;
    };
    std::vector<Face> next;
    next.reserve(4 * d.faces.size());
    for (const auto& f : d.faces) {
      const Index ab = midpoint(f[0], f[1]), bc = midpoint(f[1], f[2]), ca = midpoint(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    d.faces = std::move(next);
  }
  for (auto& p : d.vertices) p = scale(p, radius);
  return TriangleMesh::from_data(std::move(d));
}

TriangleMesh make_tetrahedron() {
  const double s = 1.0 / (2.0 * std::sqrt(2.0));
  MeshData d;
  d.vertices = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
  d.faces = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
  for (auto& f : d.faces) {
    const Vec3 c = scale(add(add(d.vertices[f[0]], d.vertices[f[1]]), d.vertices[f[2]]), 1.0 / 3.0);
    const Vec3 n = cross(sub(d.vertices[f[1]], d.vertices[f[0]]), sub(d.vertices[f[2]], d.vertices[f[0]]));
    if (dot(n, c) < 0.0) std::swap(f[1], f[2]);
  }
  return TriangleMesh::from_data(std::move(d));
}

}  // namespace surfpat
