#include "surfpat/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "surfpat/error.hpp"

namespace surfpat {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorKind::io, "cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  require(out.good(), ErrorKind::io, "write failed: " + path.string());
}

// Shortest text that round-trips to the same double.
std::string fmt(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_header(std::ofstream& out, const Header& header, const char* prefix) {
  for (const auto& [k, v] : header) out << prefix << k << " = " << v << '\n';
}

}  // namespace

std::array<std::uint8_t, 3> diverging_color(double u) {
  const double t = std::clamp(std::isfinite(u) ? u : 0.0, -1.0, 1.0);
  const auto channel = [](double x) { return static_cast<std::uint8_t>(std::lround(255.0 * x)); };
  if (t < 0.0) return {channel(1.0 + t), channel(1.0 + t), 255};
  return {255, channel(1.0 - t), channel(1.0 - t)};
}

void write_ply(const TriangleMesh& mesh, std::span<const double> u, const std::filesystem::path& path,
               const Header& header) {
  require(u.size() == mesh.vertex_count(), ErrorKind::dimension_mismatch, "write_ply: field size differs from mesh");
  auto out = open_output(path);
  out << "ply\nformat ascii 1.0\n";
  write_header(out, header, "comment ");
  out << "element vertex " << mesh.vertex_count() << '\n'
      << "property double x\nproperty double y\nproperty double z\n"
      << "property uchar red\nproperty uchar green\nproperty uchar blue\n"
      << "property double value\n"
      << "element face " << mesh.face_count() << '\n'
      << "property list uchar int vertex_indices\n"
      << "end_header\n";
  const auto pts = mesh.vertices();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto c = diverging_color(u[i]);
    out << fmt(pts[i][0]) << ' ' << fmt(pts[i][1]) << ' ' << fmt(pts[i][2]) << ' ' << int(c[0]) << ' ' << int(c[1])
        << ' ' << int(c[2]) << ' ' << fmt(u[i]) << '\n';
  }
  for (const auto& f : mesh.faces()) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  finish(out, path);
}

void write_field(std::span<const double> u, const std::filesystem::path& path, const Header& header) {
  auto out = open_output(path);
  write_header(out, header, "# ");
  char buf[40];
  for (double v : u) {
    std::snprintf(buf, sizeof buf, "%.17g\n", v);
    out << buf;
  }
  finish(out, path);
}

std::vector<double> read_field(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::io, "cannot open " + path.string());
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(line.data() + first, line.data() + last + 1, v);
    require(ec == std::errc() && ptr == line.data() + last + 1, ErrorKind::parse,
            path.string() + ":" + std::to_string(lineno) + ": bad value");
    out.push_back(v);
  }
  return out;
}

void write_trace_csv(const EnergyTrace& trace, const std::filesystem::path& path, const Header& header) {
  auto out = open_output(path);
  write_header(out, header, "# ");
  out << "step,energy,max_abs_u,mean_u\n";
  for (const auto& s : trace.samples) {
    out << s.step << ',' << fmt(s.energy) << ',' << fmt(s.max_abs_u) << ',' << fmt(s.mean_u) << '\n';
  }
  finish(out, path);
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path, const Header& header) {
  auto out = open_output(path);
  write_header(out, header, "# ");
  out << "b,class,minority_fraction,component_count,final_energy,error\n";
  for (const auto& r : rows) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    if (r.ok) {
      out << fmt(r.b) << ',' << to_string(r.label) << ',' << fmt(r.minority_fraction) << ',' << r.component_count
          << ',' << fmt(r.final_energy) << ",\n";
    } else {
      out << fmt(r.b) << ",failed,,,," << err << '\n';
    }
  }
  finish(out, path);
}

void write_profile_csv(const one_dim::Profile1D& p, double b, const std::filesystem::path& path,
                       const Header& header) {
  auto out = open_output(path);
  write_header(out, header, "# ");
  out << "x,u,du,first_integral_residual\n";
  const double c = p.u.empty() ? 0.0 : one_dim::first_integral_at(p.u[0], p.du[0], b);
  for (std::size_t k = 0; k < p.x.size(); ++k) {
    out << fmt(p.x[k]) << ',' << fmt(p.u[k]) << ',' << fmt(p.du[k]) << ','
        << fmt(one_dim::first_integral_at(p.u[k], p.du[k], b) - c) << '\n';
  }
  finish(out, path);
}

void write_text(const std::string& text, const std::filesystem::path& path, const Header& header) {
  auto out = open_output(path);
  write_header(out, header, "# ");
  out << text;
  finish(out, path);
}

}  // namespace surfpat
