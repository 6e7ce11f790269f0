/* C interface to the gaussdense library. */
#ifndef GAUSSDENSE_H
#define GAUSSDENSE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GD_API __declspec(dllexport)
#else
#define GD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gd_status {
  GD_OK = 0,
  GD_INVALID_ARGUMENT = 1,
  GD_NEGATIVE_WEIGHT = 2,
  GD_OUT_OF_DOMAIN = 3,
  GD_ZERO_WEIGHT_SAMPLE = 4,
  GD_EMPTY_CURVE = 5,
  GD_NON_POWER_OF_TWO = 6,
  GD_ZERO_SIGNAL = 7,
  GD_GRID_MISMATCH = 8,
  GD_EMPTY_FAMILY = 9,
  GD_INFINITE_BOUND = 10,
  GD_MISSING_MMC = 11,
  GD_OFF_GRID_SHIFT = 12,
  GD_SINGULAR_GRAM = 13,
  GD_STAGNATED_PURSUIT = 14,
  GD_NOT_IN_SPACE = 15,
  GD_CONFIG_ERROR = 16,
  GD_VALIDATION_ERROR = 17,
  GD_NON_FINITE_WEIGHT = 18,
  GD_ATOM_OUT_OF_DOMAIN = 19,
  GD_IO_ERROR = 20,
  GD_INTERNAL_ERROR = 99
} gd_status;

typedef struct gd_weight gd_weight;
typedef struct gd_signal gd_signal;
typedef struct gd_space gd_space;

GD_API const char* gd_version(void);
/* Message of the last failed call on this thread; empty after a successful call. */
GD_API const char* gd_last_error(void);
GD_API const char* gd_status_name(gd_status status);

/* ---- weights ---- */

/* kind: "constant", "power", "exp-abs", "gauss-square", "sobolev-omega". */
GD_API gd_status gd_weight_create(const char* kind, const double* params, size_t n_params, double halfwidth,
                                  gd_weight** out);
/* Uniformly spaced table, nearest-sample lookup. */
GD_API gd_status gd_weight_from_table(const double* xi, const double* w, size_t n, gd_weight** out);
GD_API void gd_weight_destroy(gd_weight* w);
GD_API gd_status gd_weight_eval(const gd_weight* w, double xi, double* out);
/* Fits M_w(delta) <= C e^{mu delta} over 0, 1/4, ... up to the weight's halfwidth. */
GD_API gd_status gd_weight_envelope(const gd_weight* w, double step, double* c, double* mu, int* regular);
/* Measure of {w < epsilon} inside the weight's domain and whether the weight passes. */
GD_API gd_status gd_weight_nondegenerate(const gd_weight* w, double epsilon, double step, double* measure,
                                         int* passes);

/* ---- signals ---- */

/* Samples on the grid -L + k h, k < 2L/h. re/im of length n = 2L/h; im may be NULL. */
GD_API gd_status gd_signal_create(double halfwidth, double step, const double* re, const double* im, size_t n,
                                  gd_signal** out);
GD_API gd_status gd_signal_gaussian(double halfwidth, double step, double alpha, double tau, gd_signal** out);
GD_API void gd_signal_destroy(gd_signal* s);
GD_API size_t gd_signal_count(const gd_signal* s);
GD_API gd_status gd_signal_grid(const gd_signal* s, double* halfwidth, double* step);
/* Copies all samples; n must be at least gd_signal_count(s). Either output may be NULL. */
GD_API gd_status gd_signal_values(const gd_signal* s, double* re, double* im, size_t n);

/* Continuous Fourier transform on the centered grid; the result lives on the dual grid. */
GD_API gd_status gd_forward_ft(const gd_signal* x, gd_signal** out);
GD_API gd_status gd_inverse_ft(const gd_signal* y, gd_signal** out);
GD_API gd_status gd_parseval_gap(const gd_signal* x, double* out);

/* I_alpha x (convolution with sqrt(alpha) exp(-pi alpha t^2)). */
GD_API gd_status gd_mollify(const gd_signal* x, double alpha, gd_signal** out);
/* ||C x - x||_{L^2(w)}; order 0 is I M, 1 is M I. */
GD_API gd_status gd_composite_identity_error(const gd_signal* x, double alpha, const gd_weight* w, int order,
                                             double* out);

/* ---- weighted space ---- */

/* Fails with GD_VALIDATION_ERROR when a completeness hypothesis fails, unless force is nonzero. */
GD_API gd_status gd_space_create(const gd_weight* w_t, const gd_weight* w_omega, double halfwidth, double step,
                                 double epsilon_t, double epsilon_omega, int force, gd_space** out);
GD_API void gd_space_destroy(gd_space* sp);
GD_API int gd_space_hypotheses_hold(const gd_space* sp);
GD_API gd_status gd_h_norm_sq(const gd_space* sp, const gd_signal* x, double* out);
GD_API gd_status gd_h_inner(const gd_space* sp, const gd_signal* x, const gd_signal* y, double* re, double* im);

/* Least squares over the atoms (alphas[i], taus[i]). ridge < 0 selects the default ridge.
   coef_re/coef_im have n entries. */
GD_API gd_status gd_least_squares(const gd_space* sp, const gd_signal* f, const double* alphas, const double* taus,
                                  size_t n, double ridge, double* coef_re, double* coef_im, double* residual);

/* Real parts of the two witness forms at one alpha, with their limits. */
GD_API gd_status gd_witness(const gd_space* sp, const gd_signal* f, double alpha, double* term1, double* term2,
                            double* target1, double* target2);

/* ---- batch experiments ---- */

/* Runs one subcommand (check-weights, transform, mollify, approximate, witness, check-window).
   out_dir may be NULL to use the config's output directory. exit_code receives 0, 1 or 2. */
GD_API gd_status gd_experiment_run(const char* config_path, const char* subcommand, const char* out_dir, int force,
                                   unsigned threads, uint64_t seed, int* exit_code);
/* Message of the last experiment run on this thread. */
GD_API const char* gd_experiment_message(void);

#ifdef __cplusplus
}
#endif

#endif /* GAUSSDENSE_H */
