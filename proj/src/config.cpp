#include "surfpat/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "surfpat/error.hpp"

namespace surfpat {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* expected) {
  throw Error(ErrorKind::parse, "setting '" + std::string(key) + "': expected " + expected + ", got '" +
                                    std::string(value) + "'");
}

double to_double(std::string_view key, std::string_view value) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(v)) bad_value(key, value, "a number");
  return v;
}

std::uint64_t to_unsigned(std::string_view key, std::string_view value) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad_value(key, value, "a non-negative integer");
  return v;
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

void RunConfig::validate() const {
  solver.validate();
  require(init.amplitude > 0.0, ErrorKind::invalid_argument, "amplitude must be positive");
  require(std::isfinite(init.background), ErrorKind::invalid_argument, "background must be finite");
  require(init.mode == InitMode::random || init.radius_hops >= 1, ErrorKind::invalid_argument,
          "radius must be at least 1 hop");
  require(classifier.dead_band >= 0.0, ErrorKind::invalid_argument, "dead_band must be non-negative");
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view raw) {
  const auto value = trim(raw);
  auto& s = c.solver;
  if (key == "b") s.b = to_double(key, value);
  else if (key == "eps" || key == "epsilon") s.epsilon = to_double(key, value);
  else if (key == "dt") s.dt = to_double(key, value);
  else if (key == "iters" || key == "iterations") s.max_iterations = to_unsigned(key, value);
  else if (key == "seed") s.seed = to_unsigned(key, value);
  else if (key == "stop_tolerance") s.stop_tolerance = to_double(key, value);
  else if (key == "energy_log_stride") s.energy_log_stride = to_unsigned(key, value);
  else if (key == "linear_tolerance") s.linear.tolerance = to_double(key, value);
  else if (key == "linear_max_iterations") s.linear.max_iterations = to_unsigned(key, value);
  else if (key == "init") {
    if (value == "random") c.init.mode = InitMode::random;
    else if (value == "localized") c.init.mode = InitMode::localized;
    else bad_value(key, value, "random or localized");
  } else if (key == "amplitude") c.init.amplitude = to_double(key, value);
  else if (key == "background") c.init.background = to_double(key, value);
  else if (key == "center") c.init.center = static_cast<Index>(to_unsigned(key, value));
  else if (key == "radius") c.init.radius_hops = to_unsigned(key, value);
  else if (key == "dead_band") c.classifier.dead_band = to_double(key, value);
  else if (key == "dilation") c.dilation_hops = to_unsigned(key, value);
  else if (key == "area") {
    if (value == "barycentric") c.area = AreaConvention::barycentric;
    else if (value == "mixed_voronoi") c.area = AreaConvention::mixed_voronoi;
    else bad_value(key, value, "barycentric or mixed_voronoi");
  } else if (key == "b_list") {
    c.b_list.clear();
    std::size_t start = 0;
    while (start <= value.size()) {
      const auto comma = value.find(',', start);
      const auto item = trim(value.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (!item.empty()) c.b_list.push_back(to_double(key, item));
      else if (comma != std::string_view::npos) bad_value(key, value, "comma-separated numbers");
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  } else {
    throw Error(ErrorKind::parse, "unknown setting '" + std::string(key) + "'");
  }
}

void merge_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::io, "cannot open config " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    try {
      if (eq == std::string_view::npos) throw Error(ErrorKind::parse, "expected 'key = value'");
      apply_setting(config, trim(view.substr(0, eq)), view.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(e.kind(), path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  RunConfig c;
  merge_config_file(c, path);
  return c;
}

std::vector<std::pair<std::string, std::string>> describe(const RunConfig& c) {
  const auto& s = c.solver;
  std::vector<std::pair<std::string, std::string>> out = {
      {"b", format_double(s.b)},
      {"eps", format_double(s.epsilon)},
      {"dt", format_double(s.dt)},
      {"iters", std::to_string(s.max_iterations)},
      {"seed", std::to_string(s.seed)},
      {"stop_tolerance", format_double(s.stop_tolerance)},
      {"energy_log_stride", std::to_string(s.energy_log_stride)},
      {"linear_tolerance", format_double(s.linear.tolerance)},
      {"linear_max_iterations", std::to_string(s.linear.max_iterations)},
      {"init", std::string(to_string(c.init.mode))},
      {"amplitude", format_double(c.init.amplitude)},
      {"background", format_double(c.init.background)},
      {"center", std::to_string(c.init.center)},
      {"radius", std::to_string(c.init.radius_hops)},
      {"dead_band", format_double(c.classifier.dead_band)},
      {"dilation", std::to_string(c.dilation_hops)},
      {"area", std::string(to_string(c.area))},
  };
  if (!c.b_list.empty()) {
    std::string list;
    for (std::size_t i = 0; i < c.b_list.size(); ++i) list += (i ? ", " : "") + format_double(c.b_list[i]);
    out.emplace_back("b_list", list);
  }
  return out;
}

std::string_view to_string(InitMode mode) { return mode == InitMode::random ? "random" : "localized"; }

std::string_view to_string(AreaConvention convention) {
  return convention == AreaConvention::barycentric ? "barycentric" : "mixed_voronoi";
}

}  // namespace surfpat
