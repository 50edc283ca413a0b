#ifndef HOLDERLAB_H
#define HOLDERLAB_H

/* C interface to the holderlab library: experiment runner plus scalar
 * special-function evaluations. All functions return hl_status; outputs
 * go through pointers. On failure, hl_last_error() describes the cause
 * (thread-local, valid until the next failing call on that thread). */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  HL_OK = 0,
  HL_ERROR_CONFIG = 1,   /* unknown command/key, malformed value, bad file */
  HL_ERROR_ARGUMENT = 2, /* scalar argument outside the function's domain */
  HL_ERROR_INTERNAL = 3
} hl_status;

typedef struct hl_config hl_config;

/* command: inequalities | brownian | euler | galerkin | mlmc | special.
 * Returns NULL (with hl_last_error set) for an unknown command. */
hl_config* hl_config_new(const char* command);
void hl_config_free(hl_config* cfg);

/* Sets key = value, overwriting. Unknown keys for the command fail. */
hl_status hl_config_set(hl_config* cfg, const char* key, const char* value);

/* Loads `key = value` lines ('#' comments). Values already set keep
 * priority, so flags read before the file still win. */
hl_status hl_config_load_file(hl_config* cfg, const char* path);

/* Runs the command, writing artifacts and a one-line summary to stdout.
 * *exit_code receives 0 (success), 1 (inequality failure or inconclusive
 * experiment), or 2 (configuration error). */
hl_status hl_run(const hl_config* cfg, int* exit_code);

const char* hl_last_error(void);

/* Gamma(x), x > 0 */
hl_status hl_gamma(double x, double* out);

/* E_r(x) = sqrt(sum_n x^{2n} Gamma(r)^n / Gamma(nr+1)) and its log */
hl_status hl_script_e(double r, double x, double* out);
hl_status hl_script_e_log(double r, double x, double* out);

/* (E|Z|^p)^{1/p} for standard normal Z, p >= 1 */
hl_status hl_gaussian_abs_moment(double p, double* out);

/* exact Brownian interpolation seminorm ratio f(alpha), alpha in [0, 1/2] */
hl_status hl_brownian_ratio_f(double alpha, double* out);

typedef enum {
  HL_EXACT_SUP_OF_LP = 0,
  HL_EXACT_SEMINORM = 1,
  HL_EXACT_FULL_NORM = 2
} hl_exact_kind;

/* closed-form C([0,T]; L^p) / C^alpha([0,T]; L^p) error of piecewise-
 * affine Brownian interpolation on N uniform steps */
hl_status hl_brownian_interp_error_exact(int kind, double alpha, double p, double T,
                                         uint64_t N, double* out);

#ifdef __cplusplus
}
#endif

#endif
