#ifndef SU2STATIC_H
#define SU2STATIC_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum Su2Status {
  SU2_STATUS_OK = 0,
  SU2_STATUS_NULL_POINTER = 1,
  SU2_STATUS_INVALID_ARGUMENT = 2,
  SU2_STATUS_POINT_TOO_CLOSE_TO_ORIGIN = 3,
  SU2_STATUS_STEP_TOO_LARGE = 4,
  SU2_STATUS_ZERO_COUPLING = 5,
  SU2_STATUS_UNSUPPORTED_POWER = 6,
  SU2_STATUS_ON_SINGULAR_LOCUS = 7,
  SU2_STATUS_CONSTRAINT_VIOLATED = 8,
  SU2_STATUS_MISSING_FREE_PARAM = 9,
  SU2_STATUS_CONFIG_PARSE = 10,
  SU2_STATUS_PANIC = 99,
} Su2Status;

/**
 * How the fields are built for [`su2_verify`].
 */
typedef enum Su2Mode {
  SU2_MODE_CLOSED_FORM = 0,
  SU2_MODE_FINITE_DIFFERENCE = 1,
} Su2Mode;

typedef enum Su2Realness {
  SU2_REALNESS_REAL = 0,
  SU2_REALNESS_COMPLEX = 1,
} Su2Realness;

/**
 * Opaque handle to a gauge config.
 */
typedef struct Su2Config Su2Config;

/**
 * Maximum residual norms over the shared sample set.
 */
typedef struct Su2Residuals {
  double gauss;
  double ampere;
  double faraday;
  double div_b;
} Su2Residuals;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create a config with zero radial profiles.
 *
 * # Safety
 * `k` must point to six doubles `k1.re, k1.im, k2.re, k2.im, k3.re, k3.im`;
 * `out` must be writable.
 */
enum Su2Status su2_config_new(double kappa_re,
                              double kappa_im,
                              const double *k,
                              struct Su2Config **out);

/**
 * Parse a config from the JSON format used by the command-line tool.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum Su2Status su2_config_from_json(const char *json, struct Su2Config **out);

/**
 * Release a handle. Null is ignored.
 *
 * # Safety
 * `cfg` must come from this library and not be freed twice.
 */
void su2_config_free(struct Su2Config *cfg);

/**
 * Add `(re + i im) r^power` to `f1`; `power` must lie in `-2..=1`.
 *
 * # Safety
 * `cfg` must be a live handle.
 */
enum Su2Status su2_config_add_f1_term(struct Su2Config *cfg, int32_t power, double re, double im);

/**
 * Add `(re + i im) r^power` to `f2`; `power` must lie in `-2..=1`.
 *
 * # Safety
 * `cfg` must be a live handle.
 */
enum Su2Status su2_config_add_f2_term(struct Su2Config *cfg, int32_t power, double re, double im);

/**
 * Serialize a config to JSON. Free the string with [`su2_string_free`].
 *
 * # Safety
 * `cfg` must be a live handle; `out` must be writable.
 */
enum Su2Status su2_config_to_json(const struct Su2Config *cfg, char **out);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void su2_string_free(char *s);

/**
 * Field-equation residuals over the 64-point sample set. `h_base` and
 * `richardson` are used only in finite-difference mode. A point that fails
 * to evaluate makes the affected norms infinite.
 *
 * # Safety
 * `cfg` must be a live handle; `out` must be writable.
 */
enum Su2Status su2_verify(const struct Su2Config *cfg,
                          enum Su2Mode mode,
                          double h_base,
                          bool richardson,
                          struct Su2Residuals *out);

/**
 * Largest constraint-equation residual over 16 radii in `[0.5, 2]`.
 *
 * # Safety
 * `cfg` must be a live handle; `out` must be writable.
 */
enum Su2Status su2_constraint_max(const struct Su2Config *cfg, double *out);

/**
 * Classify couplings. `case_code` receives a value in `1..=12`; pass it to
 * [`su2_case_name`] for the name.
 *
 * # Safety
 * `k` must point to six doubles as in [`su2_config_new`]; the out-pointers
 * must be writable.
 */
enum Su2Status su2_classify(double kappa_re,
                            double kappa_im,
                            const double *k,
                            int32_t *case_code,
                            bool *has_solution);

/**
 * Static name of a case code, or null for an unknown code.
 */
const char *su2_case_name(int32_t code);

/**
 * Static description of a status code.
 */
const char *su2_status_message(enum Su2Status status);

/**
 * Instantiate every solution row of a catalog with its default parameters
 * at coupling `kappa` and count rows with a failing instance (constraint
 * residual above 1e-12 or closed-form residual above 1e-7).
 *
 * # Safety
 * The out-pointers must be writable.
 */
enum Su2Status su2_catalog_verify(enum Su2Realness realness,
                                  double kappa,
                                  size_t *rows,
                                  size_t *failures);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SU2STATIC_H */
