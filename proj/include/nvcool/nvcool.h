/* SPDX-License-Identifier: Apache-2.0 */
#ifndef NVCOOL_NVCOOL_H
#define NVCOOL_NVCOOL_H

/*
 * C interface to libnvcool.
 *
 * Objects are opaque handles created by nvc_*_new/parse/builtin functions and
 * released with the matching *_free. Every fallible call returns an
 * nvc_status; on failure a description is available from nvc_last_error(),
 * which is per-thread and valid until the next failing call on that thread.
 *
 * Buffers: functions that fill a caller buffer take (buf, capacity) and
 * report the required length (excluding the terminating NUL for strings)
 * through `needed`. Passing capacity 0 is a size query.
 */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(NVC_BUILDING_LIBRARY)
#    define NVC_API __declspec(dllexport)
#  else
#    define NVC_API __declspec(dllimport)
#  endif
#else
#  define NVC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nvc_status {
  NVC_OK = 0,
  NVC_ERR_PARSE = 1,        /* malformed config or data file */
  NVC_ERR_VALIDATION = 2,   /* parameters violate an invariant */
  NVC_ERR_DOMAIN = 3,       /* argument outside an operation's domain */
  NVC_ERR_NUMERICAL = 4,    /* integrator or fit failure */
  NVC_ERR_IO = 5,
  NVC_ERR_INVALID_ARGUMENT = 6, /* null handle, unknown name, short buffer */
  NVC_ERR_INTERNAL = 7
} nvc_status;

typedef struct nvc_config nvc_config;
typedef struct nvc_result nvc_result;

NVC_API const char* nvc_version(void);
NVC_API const char* nvc_last_error(void);
NVC_API const char* nvc_status_name(nvc_status status);

/* ---- configuration ---------------------------------------------------- */

NVC_API nvc_status nvc_config_parse(const char* text, nvc_config** out);
NVC_API nvc_status nvc_config_load(const char* path, nvc_config** out);
NVC_API nvc_status nvc_config_builtin(const char* name, nvc_config** out);
NVC_API nvc_status nvc_config_clone(const nvc_config* cfg, nvc_config** out);
NVC_API void nvc_config_free(nvc_config* cfg);

NVC_API size_t nvc_builtin_count(void);
/* NULL when index is out of range. */
NVC_API const char* nvc_builtin_name(size_t index);

/* Sets one key from text (same grammar as the config file). */
NVC_API nvc_status nvc_config_set(nvc_config* cfg, const char* key, const char* value);
NVC_API nvc_status nvc_config_get(const nvc_config* cfg, const char* key, char* buf, size_t capacity,
                                  size_t* needed);
/* Full resolved config in config-file grammar. */
NVC_API nvc_status nvc_config_to_text(const nvc_config* cfg, char* buf, size_t capacity, size_t* needed);
/* Reports NVC_ERR_VALIDATION with every violation listed in nvc_last_error(). */
NVC_API nvc_status nvc_config_validate(const nvc_config* cfg);

/* ---- simulation --------------------------------------------------------- */

NVC_API nvc_status nvc_simulate(const nvc_config* cfg, nvc_result** out);
NVC_API void nvc_result_free(nvc_result* result);
NVC_API size_t nvc_result_samples(const nvc_result* result);
/*
 * Copies one column into out[0..n). Columns: "time_s", "t_mode_K", "pulse_W",
 * "delta_p_dB", "q", "N0".."N5", "NS". n must equal nvc_result_samples().
 */
NVC_API nvc_status nvc_result_column(const nvc_result* result, const char* column, double* out, size_t n);
/* Per-photon stimulated rate used by the run (s^-1). */
NVC_API double nvc_result_einstein_b(const nvc_result* result);

typedef struct nvc_run_options {
  double rtol;          /* <= 0 keeps the config value */
  long median_window;   /* < 0 keeps the config value; 0 disables */
} nvc_run_options;

typedef struct nvc_member_summary {
  double f_mode_hz;
  double min_t_mode_k;
  double time_of_min_s;
  double min_delta_p_db;
} nvc_member_summary;

/*
 * Runs the scenario and writes CSV traces and a manifest into out_dir.
 * summaries (may be NULL) receives up to capacity members; `members` gets the
 * total count.
 */
NVC_API nvc_status nvc_run_scenario(const nvc_config* cfg, const char* out_dir, const nvc_run_options* options,
                                    nvc_member_summary* summaries, size_t capacity, size_t* members);

/* ---- acceptance --------------------------------------------------------- */

typedef void (*nvc_report_fn)(int id, int passed, const char* line, void* user);

/*
 * Runs the end-to-end acceptance checks against cfg (NULL = builtin short-pulse
 * defaults). Calls report once per criterion in id order. failures receives
 * the number of failed criteria. Returns NVC_OK when the checks ran, even if
 * some failed.
 */
NVC_API nvc_status nvc_run_acceptance(const nvc_config* cfg, nvc_report_fn report, void* user, int* failures);

/* ---- physics helpers ---------------------------------------------------- */

NVC_API nvc_status nvc_photons_from_temperature(double t_kelvin, double f_hz, double* q);
NVC_API nvc_status nvc_temperature_from_photons(double q, double f_hz, double* t_kelvin);
/* Receiver constants come from cfg (NULL = defaults). */
NVC_API nvc_status nvc_noise_power_reduction(const nvc_config* cfg, double t_mode, double* delta_p_db);
NVC_API nvc_status nvc_invert_noise_power_reduction(const nvc_config* cfg, double delta_p_db, double* t_mode);
NVC_API nvc_status nvc_inversion_domain(const nvc_config* cfg, double* t_floor, double* dp_floor);
NVC_API nvc_status nvc_pump_parameter(const nvc_config* cfg, double power_w, double* xi);
NVC_API nvc_status nvc_einstein_b(const nvc_config* cfg, double* b);

/* ---- file pipelines ------------------------------------------------------- */

/*
 * Reads a two-column (time_s, delta_p) CSV, optionally median-filters it
 * (window 0 disables), inverts it to T_mode and writes (time_s, t_mode_K).
 * clamped receives the number of samples above 0 dB that were clamped.
 */
NVC_API nvc_status nvc_invert_trace_file(const nvc_config* cfg, const char* in_csv, const char* out_csv,
                                         size_t median_window, size_t* clamped);
/* Median-filters a two-column trace CSV. */
NVC_API nvc_status nvc_filter_trace_file(const char* in_csv, const char* out_csv, size_t window);
/*
 * Converts a (wavelength_nm, absorbance) table into (wavelength_nm,
 * alpha_per_m) CSV using the optical sample in cfg (NULL = defaults).
 */
NVC_API nvc_status nvc_absorbance_file(const nvc_config* cfg, const char* in_table, const char* out_csv);
/* Filling factor and mode volume (m^3) from a (h2, volume_m3, excited) table. */
NVC_API nvc_status nvc_field_map_file(const char* in_table, double* eta_fill, double* v_mode);

#ifdef __cplusplus
}
#endif

#endif /* NVCOOL_NVCOOL_H */
