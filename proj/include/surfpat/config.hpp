#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "surfpat/mesh.hpp"
#include "surfpat/patterns.hpp"
#include "surfpat/solver.hpp"

namespace surfpat {

enum class InitMode { random, localized };

struct InitConfig {
  InitMode mode = InitMode::random;
  double amplitude = 0.1;
  double background = 0.0;  // localized only
  Index center = 0;         // localized only
  std::size_t radius_hops = 8;
};

// Everything a run needs besides the mesh. Flat key = value text on disk:
//
//   # comment
//   b = -0.2
//   eps = 1
//   b_list = -0.5, -0.2, 0, 0.2, 0.5
//
struct RunConfig {
  SolverConfig solver;
  InitConfig init;
  ClassifierSettings classifier;
  AreaConvention area = AreaConvention::barycentric;
  std::size_t dilation_hops = 3;
  std::vector<double> b_list;

  void validate() const;
};

// Throws Error{parse} for unknown keys or malformed values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);
// Applies every line of a config file on top of `config`. Errors carry path:line.
void merge_config_file(RunConfig& config, const std::filesystem::path& path);
RunConfig load_config(const std::filesystem::path& path);

// Canonical key/value listing, the inverse of apply_setting.
std::vector<std::pair<std::string, std::string>> describe(const RunConfig& config);

std::string_view to_string(InitMode mode);
std::string_view to_string(AreaConvention convention);

}  // namespace surfpat
