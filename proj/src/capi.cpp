#include "surfpat/surfpat.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>
#include <new>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "surfpat/config.hpp"
#include "surfpat/error.hpp"
#include "surfpat/experiment.hpp"
#include "surfpat/mesh.hpp"
#include "surfpat/one_dim.hpp"
#include "surfpat/output.hpp"

struct sp_mesh {
  surfpat::TriangleMesh mesh;
};

struct sp_config {
  surfpat::RunConfig config;
  std::string description;
};

struct sp_result {
  surfpat::Simulation sim;
  std::string label;
  std::string text;
  std::string json;
};

struct sp_sweep {
  std::vector<surfpat::SweepRow> rows;
  std::vector<std::string> labels;
};

struct sp_profile {
  surfpat::one_dim::Profile1D profile;
  double b = 0.0;
  double max_residual = 0.0;
  surfpat::one_dim::Concavity concavity = surfpat::one_dim::Concavity::flat;
  std::string report;
};

namespace {

thread_local std::string last_error;

sp_status to_status(surfpat::ErrorKind kind) {
  using surfpat::ErrorKind;
  switch (kind) {
    case ErrorKind::invalid_argument: return SP_ERR_INVALID_ARGUMENT;
    case ErrorKind::parse: return SP_ERR_PARSE;
    case ErrorKind::topology: return SP_ERR_TOPOLOGY;
    case ErrorKind::degenerate_geometry: return SP_ERR_DEGENERATE;
    case ErrorKind::dimension_mismatch: return SP_ERR_DIMENSION;
    case ErrorKind::non_convergence: return SP_ERR_NONCONVERGENCE;
    case ErrorKind::numerical: return SP_ERR_NUMERICAL;
    case ErrorKind::domain: return SP_ERR_DOMAIN;
    case ErrorKind::io: return SP_ERR_IO;
  }
  return SP_ERR_INTERNAL;
}

sp_status fail(sp_status status, std::string msg) {
  last_error = std::move(msg);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
sp_status guarded(F&& body) noexcept {
  try {
    body();
    return SP_OK;
  } catch (const surfpat::Error& e) {
    return fail(to_status(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SP_ERR_INTERNAL, "unknown error");
  }
}

#define SP_REQUIRE_ARG(cond, what) \
  if (!(cond)) return fail(SP_ERR_INVALID_ARGUMENT, what)

surfpat::Header header_of(const surfpat::RunConfig& c) { return surfpat::describe(c); }

std::string format(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

extern "C" {

const char* sp_last_error(void) { return last_error.c_str(); }

const char* sp_status_name(sp_status status) {
  switch (status) {
    case SP_OK: return "ok";
    case SP_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case SP_ERR_PARSE: return "parse_error";
    case SP_ERR_TOPOLOGY: return "topology_error";
    case SP_ERR_DEGENERATE: return "degenerate_geometry";
    case SP_ERR_DIMENSION: return "dimension_mismatch";
    case SP_ERR_NONCONVERGENCE: return "non_convergence";
    case SP_ERR_NUMERICAL: return "numerical_error";
    case SP_ERR_DOMAIN: return "domain_error";
    case SP_ERR_IO: return "io_error";
    case SP_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* sp_version(void) { return "1.0.0"; }

// ---- meshes ---------------------------------------------------------------

sp_status sp_mesh_load(const char* path, sp_mesh** out) {
  SP_REQUIRE_ARG(path != nullptr && out != nullptr, "sp_mesh_load: null argument");
  *out = nullptr;
  return guarded([&] { *out = new sp_mesh{surfpat::load_mesh(path)}; });
}

sp_status sp_mesh_icosphere(int level, double radius, sp_mesh** out) {
  SP_REQUIRE_ARG(out != nullptr, "sp_mesh_icosphere: null argument");
  *out = nullptr;
  return guarded([&] { *out = new sp_mesh{surfpat::make_icosphere(level, radius)}; });
}

void sp_mesh_free(sp_mesh* mesh) { delete mesh; }

size_t sp_mesh_vertex_count(const sp_mesh* mesh) { return mesh ? mesh->mesh.vertex_count() : 0; }
size_t sp_mesh_face_count(const sp_mesh* mesh) { return mesh ? mesh->mesh.face_count() : 0; }
size_t sp_mesh_edge_count(const sp_mesh* mesh) { return mesh ? mesh->mesh.edge_count() : 0; }

sp_status sp_mesh_write(const sp_mesh* mesh, const char* path) {
  SP_REQUIRE_ARG(mesh != nullptr && path != nullptr, "sp_mesh_write: null argument");
  return guarded([&] {
    const std::string p = path;
    if (p.size() >= 4 && p.substr(p.size() - 4) == ".off") surfpat::write_off(mesh->mesh, p);
    else surfpat::write_obj(mesh->mesh, p);
  });
}

sp_status sp_mesh_validate_file(const char* path, char** report, int* closed_manifold) {
  SP_REQUIRE_ARG(path != nullptr && report != nullptr, "sp_mesh_validate_file: null argument");
  *report = nullptr;
  return guarded([&] {
    const auto diag = surfpat::validate(surfpat::read_mesh_data(path));
    const auto text = surfpat::to_text(diag);
    *report = new char[text.size() + 1];
    std::memcpy(*report, text.c_str(), text.size() + 1);
    if (closed_manifold != nullptr) *closed_manifold = diag.closed_manifold() ? 1 : 0;
  });
}

void sp_string_free(char* s) { delete[] s; }

// ---- configuration ----------------------------------------------------------

sp_status sp_config_create(sp_config** out) {
  SP_REQUIRE_ARG(out != nullptr, "sp_config_create: null argument");
  *out = nullptr;
  return guarded([&] { *out = new sp_config{}; });
}

void sp_config_free(sp_config* config) { delete config; }

sp_status sp_config_load(sp_config* config, const char* path) {
  SP_REQUIRE_ARG(config != nullptr && path != nullptr, "sp_config_load: null argument");
  return guarded([&] {
    auto copy = config->config;
    surfpat::merge_config_file(copy, path);
    config->config = std::move(copy);
  });
}

sp_status sp_config_set(sp_config* config, const char* key, const char* value) {
  SP_REQUIRE_ARG(config != nullptr && key != nullptr && value != nullptr, "sp_config_set: null argument");
  return guarded([&] { surfpat::apply_setting(config->config, key, value); });
}

sp_status sp_config_validate(const sp_config* config) {
  SP_REQUIRE_ARG(config != nullptr, "sp_config_validate: null argument");
  return guarded([&] { config->config.validate(); });
}

const char* sp_config_describe(sp_config* config) {
  if (config == nullptr) return "";
  std::string text;
  for (const auto& [k, v] : surfpat::describe(config->config)) text += k + " = " + v + "\n";
  config->description = std::move(text);
  return config->description.c_str();
}

size_t sp_config_b_list(const sp_config* config, double* out, size_t capacity) {
  if (config == nullptr) return 0;
  const auto& list = config->config.b_list;
  if (out != nullptr) std::copy_n(list.begin(), std::min(capacity, list.size()), out);
  return list.size();
}

// ---- simulation -------------------------------------------------------------

sp_status sp_run(const sp_mesh* mesh, const sp_config* config, sp_result** out) {
  SP_REQUIRE_ARG(mesh != nullptr && config != nullptr && out != nullptr, "sp_run: null argument");
  *out = nullptr;
  return guarded([&] {
    auto r = std::make_unique<sp_result>();
    r->sim = surfpat::simulate(mesh->mesh, config->config);
    r->label = std::string(surfpat::to_string(r->sim.report.label));
    r->text = surfpat::to_text(r->sim.report);
    r->json = surfpat::to_json(r->sim.report);
    *out = r.release();
  });
}

void sp_result_free(sp_result* result) { delete result; }

size_t sp_result_vertex_count(const sp_result* result) {
  return result ? result->sim.result.field.values.size() : 0;
}

sp_status sp_result_field(const sp_result* result, double* out, size_t count) {
  SP_REQUIRE_ARG(result != nullptr && out != nullptr, "sp_result_field: null argument");
  const auto& v = result->sim.result.field.values;
  if (count != v.size()) {
    return fail(SP_ERR_DIMENSION, "sp_result_field: buffer holds " + std::to_string(count) + " values, field has " +
                                      std::to_string(v.size()));
  }
  std::copy(v.begin(), v.end(), out);
  return SP_OK;
}

size_t sp_result_steps(const sp_result* result) { return result ? result->sim.result.field.time_level : 0; }

size_t sp_result_trace_length(const sp_result* result) {
  return result ? result->sim.result.trace.samples.size() : 0;
}

sp_status sp_result_trace_at(const sp_result* result, size_t index, sp_energy_sample* out) {
  SP_REQUIRE_ARG(result != nullptr && out != nullptr, "sp_result_trace_at: null argument");
  const auto& s = result->sim.result.trace.samples;
  SP_REQUIRE_ARG(index < s.size(), "sp_result_trace_at: index out of range");
  *out = {s[index].step, s[index].energy, s[index].max_abs_u, s[index].mean_u};
  return SP_OK;
}

const char* sp_result_label(const sp_result* result) { return result ? result->label.c_str() : ""; }
const char* sp_result_report_text(const sp_result* result) { return result ? result->text.c_str() : ""; }
const char* sp_result_report_json(const sp_result* result) { return result ? result->json.c_str() : ""; }

sp_status sp_result_locality(const sp_result* result, double* inside_variance, double* outside_variance,
                             int* outside_defined) {
  SP_REQUIRE_ARG(result != nullptr, "sp_result_locality: null argument");
  SP_REQUIRE_ARG(result->sim.locality.has_value(), "sp_result_locality: run did not use localized initial data");
  const auto& l = *result->sim.locality;
  if (inside_variance) *inside_variance = l.inside_variance;
  if (outside_variance) *outside_variance = l.outside_variance;
  if (outside_defined) *outside_defined = l.outside_defined ? 1 : 0;
  return SP_OK;
}

sp_status sp_result_write(const sp_result* result, const sp_mesh* mesh, const sp_config* config, const char* dir,
                          const char* stem) {
  SP_REQUIRE_ARG(result && mesh && config && dir && stem, "sp_result_write: null argument");
  return guarded([&] {
    const std::filesystem::path base(dir);
    std::filesystem::create_directories(base);
    auto header = header_of(config->config);
    header.emplace_back("vertices", std::to_string(mesh->mesh.vertex_count()));
    header.emplace_back("steps", std::to_string(result->sim.result.field.time_level));
    const std::string s = stem;
    const auto& u = result->sim.result.field.values;
    surfpat::write_ply(mesh->mesh, u, base / (s + ".ply"), header);
    surfpat::write_field(u, base / (s + "_field.txt"), header);
    surfpat::write_trace_csv(result->sim.result.trace, base / (s + "_trace.csv"), header);
    std::string report = result->text;
    if (const auto& l = result->sim.locality) {
      report += "inside_variance = " + format(l->inside_variance) + "\n";
      report += "outside_variance = " + (l->outside_defined ? format(l->outside_variance) : std::string("undefined")) + "\n";
    }
    surfpat::write_text(report, base / (s + "_report.txt"), header);
  });
}

// ---- sweeps -------------------------------------------------------------------

sp_status sp_sweep_run(const sp_mesh* mesh, const sp_config* config, const double* b_values, size_t count,
                       sp_sweep** out) {
  SP_REQUIRE_ARG(mesh != nullptr && config != nullptr && out != nullptr, "sp_sweep_run: null argument");
  SP_REQUIRE_ARG(count == 0 || b_values != nullptr, "sp_sweep_run: null b list");
  *out = nullptr;
  return guarded([&] {
    config->config.validate();
    auto s = std::make_unique<sp_sweep>();
    s->rows = surfpat::sweep(mesh->mesh, config->config, std::span<const double>(b_values, count));
    for (const auto& r : s->rows) s->labels.emplace_back(r.ok ? surfpat::to_string(r.label) : "failed");
    *out = s.release();
  });
}

void sp_sweep_free(sp_sweep* sweep) { delete sweep; }

size_t sp_sweep_row_count(const sp_sweep* sweep) { return sweep ? sweep->rows.size() : 0; }

sp_status sp_sweep_row_at(const sp_sweep* sweep, size_t index, sp_sweep_row* out) {
  SP_REQUIRE_ARG(sweep != nullptr && out != nullptr, "sp_sweep_row_at: null argument");
  SP_REQUIRE_ARG(index < sweep->rows.size(), "sp_sweep_row_at: index out of range");
  const auto& r = sweep->rows[index];
  *out = {r.b, r.ok ? 1 : 0, sweep->labels[index].c_str(), r.minority_fraction, r.component_count,
          r.final_energy, r.error.c_str()};
  return SP_OK;
}

sp_status sp_sweep_write_csv(const sp_sweep* sweep, const sp_config* config, const char* path) {
  SP_REQUIRE_ARG(sweep != nullptr && config != nullptr && path != nullptr, "sp_sweep_write_csv: null argument");
  return guarded([&] { surfpat::write_sweep_csv(sweep->rows, path, header_of(config->config)); });
}

// ---- 1D -----------------------------------------------------------------------

void sp_oned_default(sp_oned_params* p) {
  if (p == nullptr) return;
  *p = {0.0, 0.0, 0.5, 0.0, 2.0, 401, 1e-10};
}

sp_status sp_oned_run(const sp_oned_params* params, sp_profile** out) {
  SP_REQUIRE_ARG(params != nullptr && out != nullptr, "sp_oned_run: null argument");
  *out = nullptr;
  return guarded([&] {
    namespace od = surfpat::one_dim;
    od::IntegratorSettings settings;
    settings.abs_tolerance = params->tolerance;
    settings.rel_tolerance = params->tolerance;
    settings.samples = params->samples;
    auto p = std::make_unique<sp_profile>();
    p->b = params->b;
    p->profile = od::integrate_stationary(params->u0, params->du0, params->b, params->x_begin, params->x_end, settings);
    const auto fi = od::first_integral(p->profile, params->b);
    p->max_residual = fi.drift;
    p->concavity = od::concavity(p->profile);

    std::ostringstream os;
    os.precision(12);
    os << "b = " << params->b << '\n'
       << "u0 = " << params->u0 << '\n'
       << "du0 = " << params->du0 << '\n'
       << "x_begin = " << params->x_begin << '\n'
       << "x_end = " << params->x_end << '\n'
       << "samples = " << params->samples << '\n'
       << "tolerance = " << params->tolerance << '\n'
       << "first_integral = " << fi.constant << '\n'
       << "first_integral_drift = " << fi.drift << '\n'
       << "concavity = " << od::to_string(p->concavity) << '\n';
    if (params->b == 0.0) {
      double dev = 0.0;
      for (std::size_t k = 0; k < p->profile.x.size(); ++k) {
        dev = std::max(dev, std::abs(p->profile.u[k] - od::kink(p->profile.x[k])));
      }
      os << "kink_max_deviation = " << dev << '\n'
         << "tanh_residual_x1_width_sqrt2 = " << od::tanh_residual(1.0, std::numbers::sqrt2) << '\n'
         << "tanh_residual_x1_width_1 = " << od::tanh_residual(1.0, 1.0) << '\n';
    }
    p->report = os.str();
    *out = p.release();
  });
}

void sp_profile_free(sp_profile* profile) { delete profile; }
size_t sp_profile_length(const sp_profile* profile) { return profile ? profile->profile.x.size() : 0; }
double sp_profile_max_residual(const sp_profile* profile) { return profile ? profile->max_residual : 0.0; }

int sp_profile_concavity(const sp_profile* profile) {
  if (profile == nullptr) return 0;
  switch (profile->concavity) {
    case surfpat::one_dim::Concavity::up: return 1;
    case surfpat::one_dim::Concavity::down: return -1;
    case surfpat::one_dim::Concavity::flat: return 0;
  }
  return 0;
}

const char* sp_profile_report(const sp_profile* profile) { return profile ? profile->report.c_str() : ""; }

sp_status sp_profile_write_csv(const sp_profile* profile, const char* path) {
  SP_REQUIRE_ARG(profile != nullptr && path != nullptr, "sp_profile_write_csv: null argument");
  return guarded([&] {
    surfpat::Header header;
    std::istringstream lines(profile->report);
    std::string line;
    while (std::getline(lines, line)) {
      const auto eq = line.find(" = ");
      if (eq != std::string::npos) header.emplace_back(line.substr(0, eq), line.substr(eq + 3));
    }
    surfpat::write_profile_csv(profile->profile, profile->b, path, header);
  });
}

}  // extern "C"
