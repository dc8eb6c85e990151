// surfpat: command-line front end over the C interface.
//
//   surfpat run      --mesh icosphere:4:61 --config run.cfg --out results/
//   surfpat sweep    --mesh data/icosphere_2562.obj --b-list=-0.5,0,0.5 --out results/
//   surfpat oned     --b 1 --out results/
//   surfpat validate --mesh model.obj
//
// Exit codes: 0 success, 1 usage, 2 input error, 3 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "surfpat/surfpat.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kInput = 2, kNumerical = 3 };

int exit_code(sp_status s) {
  switch (s) {
    case SP_OK:
      return kOk;
    case SP_ERR_NONCONVERGENCE:
    case SP_ERR_NUMERICAL:
    case SP_ERR_INTERNAL:
      return kNumerical;
    default:
      return kInput;
  }
}

struct Failure {
  sp_status status;
  std::string message;
};

void check(sp_status s) {
  if (s != SP_OK) throw Failure{s, sp_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Mesh = std::unique_ptr<sp_mesh, Deleter<sp_mesh, sp_mesh_free>>;
using Config = std::unique_ptr<sp_config, Deleter<sp_config, sp_config_free>>;
using Result = std::unique_ptr<sp_result, Deleter<sp_result, sp_result_free>>;
using Sweep = std::unique_ptr<sp_sweep, Deleter<sp_sweep, sp_sweep_free>>;
using Profile = std::unique_ptr<sp_profile, Deleter<sp_profile, sp_profile_free>>;

// "icosphere:L" or "icosphere:L:R" builds a sphere, anything else is a file.
Mesh open_mesh(const std::string& source) {
  sp_mesh* m = nullptr;
  const std::string prefix = "icosphere:";
  if (source.rfind(prefix, 0) == 0) {
    const std::string rest = source.substr(prefix.size());
    const auto colon = rest.find(':');
    int level = 0;
    double radius = 1.0;
    try {
      std::size_t used = 0;
      level = std::stoi(rest.substr(0, colon), &used);
      if (used != rest.substr(0, colon).size()) throw std::invalid_argument(rest);
      if (colon != std::string::npos) {
        radius = std::stod(rest.substr(colon + 1), &used);
        if (used != rest.size() - colon - 1) throw std::invalid_argument(rest);
      }
    } catch (const std::exception&) {
      throw Failure{SP_ERR_PARSE, "bad mesh source '" + source + "' (expected icosphere:LEVEL[:RADIUS])"};
    }
    check(sp_mesh_icosphere(level, radius, &m));
  } else {
    check(sp_mesh_load(source.c_str(), &m));
  }
  return Mesh(m);
}

// Settings shared by run and sweep. Flags are kept as text and handed to the
// config parser so that file and flag values go through the same checks.
struct Common {
  std::string mesh = "icosphere:4";
  std::string config;
  std::string out = ".";
  std::vector<std::pair<std::string, std::optional<std::string>>> overrides{
      {"b", {}},       {"eps", {}},    {"dt", {}},     {"iters", {}},     {"seed", {}},
      {"init", {}},    {"center", {}}, {"radius", {}}, {"amplitude", {}}, {"background", {}},
  };

  void attach(CLI::App* cmd) {
    cmd->add_option("--mesh", mesh, "mesh file (.obj/.off) or icosphere:LEVEL[:RADIUS]")->capture_default_str();
    cmd->add_option("--config", config, "key = value settings file");
    cmd->add_option("--out", out, "output directory")->capture_default_str();
    for (auto& [key, value] : overrides) {
      auto* opt = cmd->add_option("--" + key, value, "override '" + key + "'");
      if (key == "init") opt->check(CLI::IsMember({"random", "localized"}));
    }
  }

  Config load() const {
    sp_config* c = nullptr;
    check(sp_config_create(&c));
    Config cfg(c);
    if (!config.empty()) check(sp_config_load(c, config.c_str()));
    for (const auto& [key, value] : overrides)
      if (value) check(sp_config_set(c, key.c_str(), value->c_str()));
    check(sp_config_validate(c));
    return cfg;
  }
};

int cmd_run(const Common& opts, const std::string& name) {
  auto cfg = opts.load();
  auto mesh = open_mesh(opts.mesh);
  sp_result* r = nullptr;
  check(sp_run(mesh.get(), cfg.get(), &r));
  Result result(r);
  check(sp_result_write(r, mesh.get(), cfg.get(), opts.out.c_str(), name.c_str()));
  std::printf("%s", sp_result_report_text(r));
  double inside = 0.0, outside = 0.0;
  int defined = 0;
  if (sp_result_locality(r, &inside, &outside, &defined) == SP_OK) {
    std::printf("inside_variance = %.10g\n", inside);
    if (defined) std::printf("outside_variance = %.10g\n", outside);
  }
  std::printf("steps = %zu\nwritten = %s\n", sp_result_steps(r),
              (std::filesystem::path(opts.out) / (name + "*")).string().c_str());
  return kOk;
}

int cmd_sweep(const Common& opts, const std::optional<std::string>& b_list) {
  auto cfg = opts.load();
  if (b_list) check(sp_config_set(cfg.get(), "b_list", b_list->c_str()));
  std::vector<double> bs(sp_config_b_list(cfg.get(), nullptr, 0));
  sp_config_b_list(cfg.get(), bs.data(), bs.size());
  auto mesh = open_mesh(opts.mesh);
  sp_sweep* s = nullptr;
  check(sp_sweep_run(mesh.get(), cfg.get(), bs.data(), bs.size(), &s));
  Sweep sweep(s);
  std::filesystem::create_directories(opts.out);
  const auto csv = (std::filesystem::path(opts.out) / "sweep.csv").string();
  check(sp_sweep_write_csv(s, cfg.get(), csv.c_str()));
  int failed = 0;
  for (std::size_t k = 0; k < sp_sweep_row_count(s); ++k) {
    sp_sweep_row row{};
    check(sp_sweep_row_at(s, k, &row));
    if (row.ok) {
      std::printf("b = %-8g %-15s minority_fraction = %.4f components = %zu\n", row.b, row.label,
                  row.minority_fraction, row.component_count);
    } else {
      ++failed;
      std::printf("b = %-8g failed: %s\n", row.b, row.error);
    }
  }
  std::printf("written = %s\n", csv.c_str());
  return failed ? kNumerical : kOk;
}

int cmd_oned(sp_oned_params p, const std::string& out) {
  sp_profile* raw = nullptr;
  check(sp_oned_run(&p, &raw));
  Profile prof(raw);
  std::filesystem::create_directories(out);
  const auto csv = (std::filesystem::path(out) / "profile.csv").string();
  check(sp_profile_write_csv(raw, csv.c_str()));
  std::printf("%swritten = %s\n", sp_profile_report(raw), csv.c_str());
  return kOk;
}

int cmd_validate(const std::string& path) {
  char* report = nullptr;
  int ok = 0;
  check(sp_mesh_validate_file(path.c_str(), &report, &ok));
  std::printf("%s", report);
  sp_string_free(report);
  return ok ? kOk : kInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modified Allen-Cahn patterns on closed triangle meshes"};
  app.set_version_flag("--version", std::string(sp_version()));
  app.require_subcommand(1);

  Common run_opts, sweep_opts;
  std::string name = "run";
  auto* run = app.add_subcommand("run", "simulate one configuration and write PLY, field, trace and report");
  run_opts.attach(run);
  run->add_option("--name", name, "file name stem")->capture_default_str();

  std::optional<std::string> b_list;
  auto* sweep = app.add_subcommand("sweep", "one run per b value; writes sweep.csv");
  sweep_opts.attach(sweep);
  sweep->add_option("--b-list", b_list, "comma-separated b values (overrides b_list in the config)");

  sp_oned_params oned_params;
  sp_oned_default(&oned_params);
  std::string oned_out = ".";
  auto* oned = app.add_subcommand("oned", "stationary 1D profile u'' + u - u^3 = b");
  oned->add_option("--b", oned_params.b)->capture_default_str();
  oned->add_option("--u0", oned_params.u0, "u at x_begin")->capture_default_str();
  oned->add_option("--du0", oned_params.du0, "u' at x_begin")->capture_default_str();
  oned->add_option("--x-begin", oned_params.x_begin)->capture_default_str();
  oned->add_option("--x-end", oned_params.x_end)->capture_default_str();
  oned->add_option("--samples", oned_params.samples)->capture_default_str()->check(CLI::Range(2, 10000000));
  oned->add_option("--tolerance", oned_params.tolerance)->capture_default_str()->check(CLI::PositiveNumber);
  oned->add_option("--out", oned_out, "output directory")->capture_default_str();

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "mesh diagnostics");
  validate->add_option("--mesh", validate_path, "mesh file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(run_opts, name);
    if (*sweep) return cmd_sweep(sweep_opts, b_list);
    if (*oned) return cmd_oned(oned_params, oned_out);
    if (*validate) return cmd_validate(validate_path);
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return exit_code(f.status);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInput;
  }
  return kUsage;
}
