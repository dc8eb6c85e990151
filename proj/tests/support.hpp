#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <unistd.h>
#include <random>
#include <vector>

#include "surfpat/mesh.hpp"

namespace testing {

// Closed "pillow": a flat (nx x ny) grid of spacing h at z = 0 on top, a
// second sheet sharing the rim with its interior pushed down to z = -depth.
// Top-sheet vertices away from the rim have flat one-rings.
struct Pillow {
  surfpat::TriangleMesh mesh;
  std::vector<surfpat::Index> top_interior;  // vertices whose ring is flat
  int nx, ny;
  double h;
};

inline Pillow make_pillow(int nx, int ny, double h, double depth = 0.5, double jitter = 0.0, unsigned seed = 7) {
  using surfpat::Index;
  surfpat::MeshData d;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> shake(-jitter, jitter);
  std::vector<Index> top((nx + 1) * (ny + 1)), bottom((nx + 1) * (ny + 1));
  auto id = [&](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      const bool rim = i == 0 || j == 0 || i == nx || j == ny;
      const double dx = rim ? 0.0 : shake(rng) * h, dy = rim ? 0.0 : shake(rng) * h;
      top[id(i, j)] = static_cast<Index>(d.vertices.size());
      d.vertices.push_back({i * h + dx, j * h + dy, 0.0});
      if (rim) {
        bottom[id(i, j)] = top[id(i, j)];
      } else {
        bottom[id(i, j)] = static_cast<Index>(d.vertices.size());
        d.vertices.push_back({i * h, j * h, -depth});
      }
    }
  }
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Index a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), e = id(i, j + 1);
      // alternate the diagonal so the grid is not biased in one direction,
      // except at corner cells where one diagonal would join two rim vertices
      auto on_rim = [&](int ii, int jj) { return ii == 0 || jj == 0 || ii == nx || jj == ny; };
      bool ac = (i + j) % 2 == 0;
      if (on_rim(i, j) && on_rim(i + 1, j + 1)) ac = false;
      if (on_rim(i + 1, j) && on_rim(i, j + 1)) ac = true;
      if (ac) {
        d.faces.push_back({top[a], top[b], top[c]});
        d.faces.push_back({top[a], top[c], top[e]});
        d.faces.push_back({bottom[a], bottom[c], bottom[b]});
        d.faces.push_back({bottom[a], bottom[e], bottom[c]});
      } else {
        d.faces.push_back({top[a], top[b], top[e]});
        d.faces.push_back({top[b], top[c], top[e]});
        d.faces.push_back({bottom[a], bottom[e], bottom[b]});
        d.faces.push_back({bottom[b], bottom[e], bottom[c]});
      }
    }
  }
  Pillow p{surfpat::TriangleMesh::from_data(std::move(d)), {}, nx, ny, h};
  for (int j = 2; j <= ny - 2; ++j)
    for (int i = 2; i <= nx - 2; ++i) p.top_interior.push_back(top[id(i, j)]);
  return p;
}

// Uniformly random rotation (unit quaternion), row-major.
inline std::array<double, 9> random_rotation(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  double q[4];
  double n = 0.0;
  for (double& c : q) {
    c = g(rng);
    n += c * c;
  }
  n = std::sqrt(n);
  const double w = q[0] / n, x = q[1] / n, y = q[2] / n, z = q[3] / n;
  return {1 - 2 * (y * y + z * z), 2 * (x * y - z * w),     2 * (x * z + y * w),
          2 * (x * y + z * w),     1 - 2 * (x * x + z * z), 2 * (y * z - x * w),
          2 * (x * z - y * w),     2 * (y * z + x * w),     1 - 2 * (x * x + y * y)};
}

}  // namespace testing

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace testing {

// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("surfpat_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace testing
