/*
 * nlcflow C interface.
 *
 * All functions returning nlcf_status report NLCF_OK on success. On failure the
 * message of the most recent error on the calling thread is available through
 * nlcf_last_error(). Strings returned through char** out-parameters are owned by
 * the caller and released with nlcf_string_free().
 */
#ifndef NLCFLOW_NLCFLOW_H
#define NLCFLOW_NLCFLOW_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define NLCF_API __declspec(dllexport)
#else
#define NLCF_API __attribute__((visibility("default")))
#endif

typedef enum nlcf_status {
  NLCF_OK = 0,
  NLCF_ERR_CFL_VIOLATION = 1,
  NLCF_ERR_LINEAR_SOLVE_FAILURE = 2,
  NLCF_ERR_INCOMPATIBLE_RHS = 3,
  NLCF_ERR_NOT_APPLICABLE = 4,
  NLCF_ERR_INSUFFICIENT_SAMPLES = 5,
  NLCF_ERR_DEGENERATE_FIT = 6,
  NLCF_ERR_MAX_ITERATIONS = 7,
  NLCF_ERR_STEP_REJECTED = 8,
  NLCF_ERR_ORDER_REGRESSION = 9,
  NLCF_ERR_CONFIG = 10,
  NLCF_ERR_IO = 11,
  NLCF_ERR_INVALID_ARGUMENT = 12,
  NLCF_ERR_INTERNAL = 99
} nlcf_status;

typedef struct nlcf_config nlcf_config;
typedef struct nlcf_sim nlcf_sim;

/* One row of diagnostics, in CSV column order. */
typedef struct nlcf_record {
  double t;
  double kinetic;
  double elastic;
  double potential;
  double E_total;
  double E_tilde;
  double grad_v_L2;
  double gl_res_L2;
  double A_val;
  double B_val;
  double mass;
  double rho_min;
  double rho_max;
  double d_maxnorm;
  double div_v_inf;
  double law_residual;
  double g_L2;
  double d_dist;
  double v_H1;
} nlcf_record;

NLCF_API const char* nlcf_version(void);
NLCF_API const char* nlcf_status_name(nlcf_status status);
NLCF_API const char* nlcf_last_error(void);
NLCF_API void nlcf_string_free(char* s);

/* Configuration */
NLCF_API nlcf_status nlcf_config_load(const char* path, nlcf_config** out);
NLCF_API nlcf_status nlcf_config_parse(const char* text, nlcf_config** out);
NLCF_API nlcf_status nlcf_config_preset(const char* name, nlcf_config** out);
/* key is "section.key", e.g. "stepping.dt". */
NLCF_API nlcf_status nlcf_config_set(nlcf_config* cfg, const char* key, const char* value);
NLCF_API nlcf_status nlcf_config_format(const nlcf_config* cfg, char** out);
NLCF_API void nlcf_config_free(nlcf_config* cfg);

/* Step-by-step simulation */
NLCF_API nlcf_status nlcf_sim_create(const nlcf_config* cfg, nlcf_sim** out);
NLCF_API nlcf_status nlcf_sim_step(nlcf_sim* sim, long steps);
NLCF_API nlcf_status nlcf_sim_time(const nlcf_sim* sim, double* t, long* step);
/* Diagnostics of the current state against the previous one (initial record at t = 0). */
NLCF_API nlcf_status nlcf_sim_record(const nlcf_sim* sim, nlcf_record* out);
NLCF_API nlcf_status nlcf_sim_save(const nlcf_sim* sim, const char* path);
NLCF_API nlcf_status nlcf_sim_load(nlcf_sim* sim, const char* path);
NLCF_API void nlcf_sim_free(nlcf_sim* sim);

/* Whole-run drivers; results are JSON documents. */
NLCF_API nlcf_status nlcf_run(const nlcf_config* cfg, char** report_json, int* checks_passed);
/* Writes the stationary director to snapshot_path unless it is NULL. */
NLCF_API nlcf_status nlcf_stationary(const nlcf_config* cfg, const char* snapshot_path, char** result_json);
NLCF_API nlcf_status nlcf_mms(const nlcf_config* cfg, char** table_json, int* passed);
NLCF_API nlcf_status nlcf_report_csv(const char* csv_path, double window_fraction, double xi,
                                     char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* NLCFLOW_NLCFLOW_H */
