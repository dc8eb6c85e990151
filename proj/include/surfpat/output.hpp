#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "surfpat/experiment.hpp"
#include "surfpat/mesh.hpp"
#include "surfpat/one_dim.hpp"
#include "surfpat/solver.hpp"

namespace surfpat {

// Lines written as "# key = value" (or PLY "comment key = value") at the top
// of every output file.
using Header = std::vector<std::pair<std::string, std::string>>;

// Diverging map on u clamped to [-1, 1]: -1 blue, 0 white, +1 red.
std::array<std::uint8_t, 3> diverging_color(double u);

void write_ply(const TriangleMesh& mesh, std::span<const double> u, const std::filesystem::path& path,
               const Header& header = {});
// One value per line, %.17g.
void write_field(std::span<const double> u, const std::filesystem::path& path, const Header& header = {});
std::vector<double> read_field(const std::filesystem::path& path);
// step,energy,max_abs_u,mean_u
void write_trace_csv(const EnergyTrace& trace, const std::filesystem::path& path, const Header& header = {});
// b,class,minority_fraction,component_count,final_energy,error
void write_sweep_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path, const Header& header = {});
// x,u,du,first_integral_residual
void write_profile_csv(const one_dim::Profile1D& profile, double b, const std::filesystem::path& path,
                       const Header& header = {});
void write_text(const std::string& text, const std::filesystem::path& path, const Header& header = {});

}  // namespace surfpat
