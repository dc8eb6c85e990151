#include <doctest.h>

#include <cmath>
#include <numeric>

#include "../oracles.hpp"
#include "../support.hpp"
#include "surfpat/error.hpp"
#include "surfpat/mesh.hpp"

using namespace surfpat;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::invalid_argument;
}

std::string message_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

MeshData tetra_data() { return make_tetrahedron().data(); }

}  // namespace

TEST_CASE("icosphere counts and Euler characteristic") {
  for (int level = 0; level <= 4; ++level) {
    const auto m = make_icosphere(level, 2.0);
    const std::size_t v = 10 * (std::size_t{1} << (2 * level)) + 2;
    CHECK(m.vertex_count() == v);
    CHECK(m.face_count() == 2 * (v - 2));
    CHECK(m.edge_count() == 3 * (v - 2));
    for (const auto& p : m.vertices()) CHECK(std::hypot(p[0], p[1], p[2]) == doctest::Approx(2.0).epsilon(1e-12));
  }
  const auto m = make_icosphere(4);
  CHECK(m.vertex_count() == 2562);
  CHECK(m.total_area() == doctest::Approx(4 * M_PI).epsilon(0.01));
  CHECK(kind_of([] { make_icosphere(9); }) == ErrorKind::invalid_argument);
  CHECK(kind_of([] { make_icosphere(2, 0.0); }) == ErrorKind::invalid_argument);
}

TEST_CASE("tetrahedron is closed and outward oriented") {
  const auto t = make_tetrahedron();
  CHECK(t.vertex_count() == 4);
  CHECK(t.edge_count() == 6);
  const auto diag = validate(t.data());
  CHECK(diag.closed_manifold());
  CHECK(diag.inconsistent_orientation.empty());
  CHECK(diag.euler_characteristic == 2);
  // outward: normal points away from the centroid
  const auto v = t.vertices();
  for (const auto& f : t.faces()) {
    const auto& a = v[f[0]];
    const auto& b = v[f[1]];
    const auto& c = v[f[2]];
    const double ux = b[0] - a[0], uy = b[1] - a[1], uz = b[2] - a[2];
    const double wx = c[0] - a[0], wy = c[1] - a[1], wz = c[2] - a[2];
    const double nx = uy * wz - uz * wy, ny = uz * wx - ux * wz, nz = ux * wy - uy * wx;
    CHECK(nx * (a[0] + b[0] + c[0]) + ny * (a[1] + b[1] + c[1]) + nz * (a[2] + b[2] + c[2]) > 0.0);
  }
  for (const auto& e : t.edges()) {
    const auto& p = v[e.a];
    const auto& q = v[e.b];
    CHECK(std::hypot(p[0] - q[0], p[1] - q[1], p[2] - q[2]) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("rings are sorted and symmetric") {
  const auto m = make_icosphere(2);
  for (Index v = 0; v < m.vertex_count(); ++v) {
    const auto ring = m.neighbors(v);
    CHECK(std::is_sorted(ring.begin(), ring.end()));
    const auto eids = m.neighbor_edges(v);
    REQUIRE(eids.size() == ring.size());
    for (std::size_t k = 0; k < ring.size(); ++k) {
      const auto nb = m.neighbors(ring[k]);
      CHECK(std::binary_search(nb.begin(), nb.end(), v));
      CHECK(m.edge_index(v, ring[k]) == eids[k]);
      const Edge e = m.edges()[eids[k]];
      CHECK(e.a == std::min(v, ring[k]));
      CHECK(e.b == std::max(v, ring[k]));
    }
  }
  CHECK(kind_of([&] { m.edge_index(0, 0); }) == ErrorKind::invalid_argument);
}

TEST_CASE("opposite edges") {
  const auto m = make_icosphere(1);
  for (std::size_t f = 0; f < m.face_count(); ++f) {
    const auto& t = m.faces()[f];
    for (int k = 0; k < 3; ++k) {
      const Edge e = m.edges()[m.opposite_edge(f, k)];
      const Index i = t[(k + 1) % 3], j = t[(k + 2) % 3];
      CHECK(e.a == std::min(i, j));
      CHECK(e.b == std::max(i, j));
    }
  }
}

TEST_CASE("topology errors") {
  SUBCASE("boundary edge") {
    auto d = tetra_data();
    d.faces.pop_back();
    const auto msg = message_of([&] { TriangleMesh::from_data(d); });
    CHECK(msg.find("boundary edge") != std::string::npos);
    CHECK(kind_of([&] { TriangleMesh::from_data(d); }) == ErrorKind::topology);
  }
  SUBCASE("non-manifold edge") {
    // two tetrahedra glued along one edge only
    auto d = tetra_data();
    const auto base = static_cast<Index>(d.vertices.size());
    d.vertices.push_back({5.0, 0.0, 0.0});
    d.vertices.push_back({5.0, 1.0, 0.0});
    const auto f0 = d.faces[0];
    const Index a = f0[0], b = f0[1];
    d.faces.push_back({a, b, base});
    d.faces.push_back({b, a, base + 1});
    d.faces.push_back({a, base, base + 1});
    d.faces.push_back({b, base + 1, base});
    const auto msg = message_of([&] { TriangleMesh::from_data(d); });
    CHECK(msg.find("non-manifold edge") != std::string::npos);
  }
  SUBCASE("index out of range") {
    auto d = tetra_data();
    d.faces[0][0] = 17;
    CHECK(kind_of([&] { TriangleMesh::from_data(d); }) == ErrorKind::topology);
  }
  SUBCASE("repeated corner") {
    auto d = tetra_data();
    d.faces[0][1] = d.faces[0][0];
    CHECK(kind_of([&] { TriangleMesh::from_data(d); }) == ErrorKind::topology);
  }
  SUBCASE("unused vertex") {
    auto d = tetra_data();
    d.vertices.push_back({9.0, 9.0, 9.0});
    CHECK(kind_of([&] { TriangleMesh::from_data(d); }) == ErrorKind::topology);
  }
  SUBCASE("no faces") {
    CHECK(kind_of([] { TriangleMesh::from_data({}); }) == ErrorKind::topology);
  }
}

TEST_CASE("degenerate geometry") {
  auto d = tetra_data();
  // collapse the tetrahedron onto a plane
  for (auto& p : d.vertices) p[2] = 0.0;
  d.vertices[3] = {0.0, 0.0, 0.0};
  d.vertices[0] = {0.0, 0.0, 0.0};
  CHECK(kind_of([&] { TriangleMesh::from_data(d); }) == ErrorKind::degenerate_geometry);
}

TEST_CASE("OBJ round trip and parsing") {
  testing::TempDir dir("mesh");
  const auto m = make_icosphere(1);
  write_obj(m, dir / "a.obj");
  write_off(m, dir / "a.off");
  for (const char* name : {"a.obj", "a.off"}) {
    const auto back = load_mesh(dir / name);
    REQUIRE(back.vertex_count() == m.vertex_count());
    REQUIRE(back.face_count() == m.face_count());
    for (std::size_t i = 0; i < m.vertex_count(); ++i)
      for (int c = 0; c < 3; ++c) CHECK(back.vertices()[i][c] == m.vertices()[i][c]);
    for (std::size_t f = 0; f < m.face_count(); ++f) CHECK(back.faces()[f] == m.faces()[f]);
  }

  SUBCASE("negative indices, slashes, comments") {
    testing::write_file(dir / "t.obj",
                        "# tetra\n"
                        "o thing\n"
                        "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\n"
                        "vn 0 0 1\n"
                        "f 1/1/1 3//1 2\n"
                        "f -4 -3 -1\n"
                        "f 2 3 4\n"
                        "f 1 4 3\n");
    const auto t = load_mesh(dir / "t.obj");
    CHECK(t.face_count() == 4);
    CHECK(t.faces()[1] == Face{0, 1, 3});
  }
  SUBCASE("zero index reports the line") {
    testing::write_file(dir / "z.obj", "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 0 1 2\n");
    const auto msg = message_of([&] { read_mesh_data(dir / "z.obj"); });
    CHECK(msg.find("z.obj:4:") != std::string::npos);
    CHECK(kind_of([&] { read_mesh_data(dir / "z.obj"); }) == ErrorKind::parse);
  }
  SUBCASE("quad face rejected") {
    testing::write_file(dir / "q.obj", "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 1 1 0\nf 1 2 4 3\n");
    CHECK(message_of([&] { read_mesh_data(dir / "q.obj"); }).find("q.obj:5:") != std::string::npos);
  }
  SUBCASE("bad number") {
    testing::write_file(dir / "n.obj", "v 0 zero 0\n");
    CHECK(message_of([&] { read_mesh_data(dir / "n.obj"); }).find("n.obj:1:") != std::string::npos);
  }
  SUBCASE("OFF errors") {
    testing::write_file(dir / "h.off", "NOFF\n4 4 0\n");
    CHECK(kind_of([&] { read_mesh_data(dir / "h.off"); }) == ErrorKind::parse);
    testing::write_file(dir / "s.off", "OFF\n4 4 6\n0 0 0\n1 0 0\n");
    CHECK(message_of([&] { read_mesh_data(dir / "s.off"); }).find("unexpected end of file") != std::string::npos);
    testing::write_file(dir / "r.off", "OFF # comment\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 3\n");
    CHECK(message_of([&] { read_mesh_data(dir / "r.off"); }).find("r.off:6:") != std::string::npos);
  }
  SUBCASE("io and extension errors") {
    CHECK(kind_of([&] { read_mesh_data(dir / "missing.obj"); }) == ErrorKind::io);
    testing::write_file(dir / "x.stl", "solid\n");
    CHECK(kind_of([&] { read_mesh_data(dir / "x.stl"); }) == ErrorKind::invalid_argument);
  }
}

TEST_CASE("validate reports defects without throwing") {
  auto d = tetra_data();
  CHECK(validate(d).closed_manifold());

  auto open = d;
  open.faces.pop_back();
  auto diag = validate(open);
  CHECK_FALSE(diag.closed_manifold());
  CHECK(diag.boundary_edges.size() == 3);
  CHECK(to_text(diag).find("status = defective") != std::string::npos);
  CHECK(to_text(validate(d)).find("status = ok") != std::string::npos);

  auto flipped = d;
  std::swap(flipped.faces[0][0], flipped.faces[0][1]);
  diag = validate(flipped);
  CHECK(diag.closed_manifold());
  CHECK(diag.inconsistent_orientation.size() == 3);

  auto bad = d;
  bad.faces.push_back({0, 0, 9});
  diag = validate(bad);
  CHECK(diag.bad_index_faces.size() == 1);

  auto sliver = d;
  sliver.vertices.push_back({0.0, 0.0, 0.0});
  sliver.vertices.push_back({1.0, 0.0, 0.0});
  sliver.vertices.push_back({2.0, 0.0, 0.0});
  sliver.faces.push_back({4, 5, 6});
  diag = validate(sliver);
  CHECK(diag.degenerate_faces.size() == 1);
}

TEST_CASE("cotan weights and areas") {
  SUBCASE("regular tetrahedron") {
    const auto t = make_tetrahedron();
    const auto w = cotan_weights(t);
    for (double x : w.values) CHECK(x == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
    const auto a = vertex_areas(t);
    for (double x : a.values) CHECK(x == doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-12));
    const auto av = vertex_areas(t, AreaConvention::mixed_voronoi);
    for (double x : av.values) CHECK(x == doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-12));
  }
  SUBCASE("weights match a per-face oracle") {
    const auto p = testing::make_pillow(6, 5, 0.3, 0.4, 0.2);
    const auto w = cotan_weights(p.mesh);
    const auto dense = oracle::dense_stiffness(p.mesh);
    for (std::size_t e = 0; e < p.mesh.edge_count(); ++e) {
      const auto [a, b] = p.mesh.edges()[e];
      CHECK(w.values[e] == doctest::Approx(-2.0 * dense[a][b]).epsilon(1e-12));
    }
  }
  SUBCASE("areas partition the surface") {
    for (const auto& m : {make_icosphere(3), testing::make_pillow(8, 8, 0.1, 0.3, 0.3).mesh}) {
      CHECK(vertex_areas(m).total() == doctest::Approx(m.total_area()).epsilon(1e-12));
      const auto v = vertex_areas(m, AreaConvention::mixed_voronoi);
      CHECK(v.total() == doctest::Approx(m.total_area()).epsilon(1e-12));
      for (double a : v.values) CHECK(a > 0.0);
    }
  }
  SUBCASE("obtuse triangles give negative weights") {
    // flat triangular bipyramid: both angles opposite an equator edge are ~120 degrees
    MeshData d;
    for (int k = 0; k < 3; ++k) d.vertices.push_back({std::cos(2 * M_PI * k / 3), std::sin(2 * M_PI * k / 3), 0.0});
    d.vertices.push_back({0.0, 0.0, 0.05});
    d.vertices.push_back({0.0, 0.0, -0.05});
    for (Index k = 0; k < 3; ++k) {
      d.faces.push_back({k, Index((k + 1) % 3), 3});
      d.faces.push_back({Index((k + 1) % 3), k, 4});
    }
    const auto m = TriangleMesh::from_data(d);
    const auto w = cotan_weights(m);
    CHECK(w.values[m.edge_index(0, 1)] < 0.0);
    CHECK(w.values[m.edge_index(0, 3)] > 0.0);
    const auto dense = oracle::dense_stiffness(m);
    CHECK(w.values[m.edge_index(0, 1)] == doctest::Approx(-2.0 * dense[0][1]).epsilon(1e-12));
    const auto v = vertex_areas(m, AreaConvention::mixed_voronoi);
    CHECK(v.total() == doctest::Approx(m.total_area()).epsilon(1e-12));
  }
}

TEST_CASE("rigid motions leave weights and areas unchanged") {
  const auto m = make_icosphere(3, 1.7);
  const auto w0 = cotan_weights(m);
  const auto a0 = vertex_areas(m);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto r = testing::random_rotation(seed);
    const auto t = m.transformed(r, {3.0 * seed, -2.0, 0.5});
    const auto w1 = cotan_weights(t);
    const auto a1 = vertex_areas(t);
    double dw = 0.0, da = 0.0;
    for (std::size_t e = 0; e < w0.values.size(); ++e) dw = std::max(dw, std::abs(w0.values[e] - w1.values[e]));
    for (std::size_t i = 0; i < a0.values.size(); ++i) da = std::max(da, std::abs(a0.values[i] - a1.values[i]));
    CHECK(dw < 1e-10);
    CHECK(da < 1e-10);
  }
}

TEST_CASE("geometry summaries") {
  const auto t = make_tetrahedron();
  CHECK(t.mean_edge_length() == doctest::Approx(1.0));
  CHECK(t.total_area() == doctest::Approx(std::sqrt(3.0)));
  CHECK(t.bounding_diagonal() > 0.0);
  const auto d = validate(t.data());
  CHECK(d.min_angle == doctest::Approx(M_PI / 3));
  CHECK(d.max_angle == doctest::Approx(M_PI / 3));
  CHECK(d.obtuse_fraction == 0.0);
}
