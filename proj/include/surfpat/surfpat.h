/*
 * C interface to the surfpat library: modified Allen-Cahn pattern formation
 * on closed triangle meshes.
 *
 * Every function that can fail returns an sp_status. On failure the message
 * is available from sp_last_error() until the next failing call on the same
 * thread. Handles are opaque; each *_create / *_load / *_run has a matching
 * *_free that accepts NULL. Strings returned as `const char*` are owned by
 * the handle they came from.
 */
#ifndef SURFPAT_SURFPAT_H
#define SURFPAT_SURFPAT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SURFPAT_BUILDING)
#    define SURFPAT_API __declspec(dllexport)
#  else
#    define SURFPAT_API __declspec(dllimport)
#  endif
#else
#  define SURFPAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sp_status {
  SP_OK = 0,
  SP_ERR_INVALID_ARGUMENT = 1,
  SP_ERR_PARSE = 2,
  SP_ERR_TOPOLOGY = 3,
  SP_ERR_DEGENERATE = 4,
  SP_ERR_DIMENSION = 5,
  SP_ERR_NONCONVERGENCE = 6,
  SP_ERR_NUMERICAL = 7,
  SP_ERR_DOMAIN = 8,
  SP_ERR_IO = 9,
  SP_ERR_INTERNAL = 10
} sp_status;

typedef struct sp_mesh sp_mesh;
typedef struct sp_config sp_config;
typedef struct sp_result sp_result;
typedef struct sp_sweep sp_sweep;
typedef struct sp_profile sp_profile;

SURFPAT_API const char* sp_last_error(void);
SURFPAT_API const char* sp_status_name(sp_status status);
SURFPAT_API const char* sp_version(void);

/* ---- meshes ------------------------------------------------------------ */

/* ASCII .obj or .off, chosen by extension. */
SURFPAT_API sp_status sp_mesh_load(const char* path, sp_mesh** out);
SURFPAT_API sp_status sp_mesh_icosphere(int level, double radius, sp_mesh** out);
SURFPAT_API void sp_mesh_free(sp_mesh* mesh);
SURFPAT_API size_t sp_mesh_vertex_count(const sp_mesh* mesh);
SURFPAT_API size_t sp_mesh_face_count(const sp_mesh* mesh);
SURFPAT_API size_t sp_mesh_edge_count(const sp_mesh* mesh);
SURFPAT_API sp_status sp_mesh_write(const sp_mesh* mesh, const char* path);

/* Diagnoses a mesh file without requiring it to be closed or manifold.
 * *report receives "key = value" text; release it with sp_string_free.
 * *closed_manifold is 1 when the file passes every check. */
SURFPAT_API sp_status sp_mesh_validate_file(const char* path, char** report, int* closed_manifold);
SURFPAT_API void sp_string_free(char* s);

/* ---- configuration ----------------------------------------------------- */

SURFPAT_API sp_status sp_config_create(sp_config** out);
SURFPAT_API void sp_config_free(sp_config* config);
/* Applies a key = value file on top of the current settings. */
SURFPAT_API sp_status sp_config_load(sp_config* config, const char* path);
SURFPAT_API sp_status sp_config_set(sp_config* config, const char* key, const char* value);
/* Checks the settings as a whole (dt > 0, eps > 0, ...). */
SURFPAT_API sp_status sp_config_validate(const sp_config* config);
/* Canonical "key = value" lines. Owned by the config. */
SURFPAT_API const char* sp_config_describe(sp_config* config);
SURFPAT_API size_t sp_config_b_list(const sp_config* config, double* out, size_t capacity);

/* ---- simulation -------------------------------------------------------- */

typedef struct sp_energy_sample {
  size_t step;
  double energy;
  double max_abs_u;
  double mean_u;
} sp_energy_sample;

SURFPAT_API sp_status sp_run(const sp_mesh* mesh, const sp_config* config, sp_result** out);
SURFPAT_API void sp_result_free(sp_result* result);
SURFPAT_API size_t sp_result_vertex_count(const sp_result* result);
SURFPAT_API sp_status sp_result_field(const sp_result* result, double* out, size_t count);
SURFPAT_API size_t sp_result_steps(const sp_result* result);
SURFPAT_API size_t sp_result_trace_length(const sp_result* result);
SURFPAT_API sp_status sp_result_trace_at(const sp_result* result, size_t index, sp_energy_sample* out);
SURFPAT_API const char* sp_result_label(const sp_result* result);
SURFPAT_API const char* sp_result_report_text(const sp_result* result);
SURFPAT_API const char* sp_result_report_json(const sp_result* result);
/* Locality variances; returns SP_ERR_INVALID_ARGUMENT unless the run used
 * localized initial data. *outside_defined is 0 when the region covers the mesh. */
SURFPAT_API sp_status sp_result_locality(const sp_result* result, double* inside_variance, double* outside_variance,
                                         int* outside_defined);
/* Writes <dir>/<stem>.ply, <stem>_field.txt, <stem>_trace.csv and
 * <stem>_report.txt, each headed by the full configuration. */
SURFPAT_API sp_status sp_result_write(const sp_result* result, const sp_mesh* mesh, const sp_config* config,
                                      const char* dir, const char* stem);

/* ---- sweeps ------------------------------------------------------------ */

typedef struct sp_sweep_row {
  double b;
  int ok;
  const char* label; /* "failed" when !ok */
  double minority_fraction;
  size_t component_count;
  double final_energy;
  const char* error; /* empty when ok */
} sp_sweep_row;

SURFPAT_API sp_status sp_sweep_run(const sp_mesh* mesh, const sp_config* config, const double* b_values,
                                   size_t count, sp_sweep** out);
SURFPAT_API void sp_sweep_free(sp_sweep* sweep);
SURFPAT_API size_t sp_sweep_row_count(const sp_sweep* sweep);
SURFPAT_API sp_status sp_sweep_row_at(const sp_sweep* sweep, size_t index, sp_sweep_row* out);
SURFPAT_API sp_status sp_sweep_write_csv(const sp_sweep* sweep, const sp_config* config, const char* path);

/* ---- 1D stationary analysis -------------------------------------------- */

typedef struct sp_oned_params {
  double b;
  double u0;
  double du0;
  double x_begin;
  double x_end;
  size_t samples;
  double tolerance;
} sp_oned_params;

/* b = 0, u(0) = 0, u'(0) = 0.5, x in [0, 2], 401 samples, tolerance 1e-10. */
SURFPAT_API void sp_oned_default(sp_oned_params* params);
SURFPAT_API sp_status sp_oned_run(const sp_oned_params* params, sp_profile** out);
SURFPAT_API void sp_profile_free(sp_profile* profile);
SURFPAT_API size_t sp_profile_length(const sp_profile* profile);
SURFPAT_API double sp_profile_max_residual(const sp_profile* profile);
/* +1 concave up, -1 concave down, 0 flat. */
SURFPAT_API int sp_profile_concavity(const sp_profile* profile);
/* "key = value" summary (first-integral constant and drift, concavity, and
 * the deviation from tanh(x / sqrt 2) when b = 0). Owned by the profile. */
SURFPAT_API const char* sp_profile_report(const sp_profile* profile);
SURFPAT_API sp_status sp_profile_write_csv(const sp_profile* profile, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* SURFPAT_SURFPAT_H */
