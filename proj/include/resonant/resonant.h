/* SPDX-License-Identifier: Apache-2.0 */
#ifndef RESONANT_RESONANT_H
#define RESONANT_RESONANT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RS_API __declspec(dllexport)
#else
#define RS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rs_status {
  RS_OK = 0,
  RS_ERR_INVALID_ARGUMENT = 1,
  RS_ERR_OVERFLOW = 2,
  RS_ERR_SINGULAR = 3,
  RS_ERR_INTEGRATION = 4,
  RS_ERR_DEGENERATE = 5,
  RS_ERR_IO = 6,
  RS_ERR_PARSE = 7,
  RS_ERR_INTERNAL = 8
} rs_status;

/* Message for the most recent failure on the calling thread. */
RS_API const char* rs_last_error(void);
RS_API const char* rs_status_name(rs_status status);

typedef struct rs_complex {
  double re;
  double im;
} rs_complex;

/* Weight parameter G; `infinite` nonzero selects the G -> infinity limit. */
typedef struct rs_weight {
  double value;
  int infinite;
} rs_weight;

typedef struct rs_family rs_family;
typedef struct rs_tensor rs_tensor;
typedef struct rs_trajectory rs_trajectory;

/* ---- mode space ---- */

RS_API rs_status rs_mode_weight(rs_weight g, int n, double* out);
/* beta_n = alpha_n / f_n for n = 0..count-1. */
RS_API rs_status rs_alpha_to_beta(const rs_complex* alpha, size_t count,
                                  rs_weight g, rs_complex* beta);

/* ---- coefficient families ---- */

RS_API size_t rs_family_count(void);
RS_API const char* rs_family_name_at(size_t index);

/* g may be NULL for the family's own weight parameter. */
RS_API rs_status rs_family_create(const char* name, const rs_weight* g,
                                  rs_family** out);
RS_API void rs_family_destroy(rs_family* family);
RS_API const char* rs_family_name(const rs_family* family);
/* 4 for cubic families, 6 for quintic ones. */
RS_API int rs_family_tuple_length(const rs_family* family);
RS_API rs_weight rs_family_weight(const rs_family* family);
RS_API rs_status rs_family_eval_S(const rs_family* family, const int* tuple,
                                  double* out);
RS_API rs_status rs_family_eval_C(const rs_family* family, const int* tuple,
                                  double* out);

/* ---- identity checker ---- */

typedef struct rs_identity_report {
  /* "cubic_finite_g", "quintic_finite_g" or "quintic_infinite_g". */
  const char* condition;
  int bound;
  uint64_t tuples_checked;
  double max_residual;
  double max_scaled_residual;
  int worst_tuple[6];
  int tuple_length;
  double tolerance;
  int exact;
  int passed;
} rs_identity_report;

/* bound is B (cubic, per index) or D (quintic, bra-side sum). */
RS_API rs_status rs_check_identity(const rs_family* family, int bound,
                                   double tolerance, rs_identity_report* out);

/* ---- coupling tensor ---- */

typedef struct rs_tensor_info {
  int cutoff;
  int tuple_length;
  uint64_t entries;
  uint64_t ordered_count;
  rs_weight g;
} rs_tensor_info;

RS_API rs_status rs_tensor_build(const rs_family* family, int cutoff,
                                 rs_tensor** out);
RS_API rs_status rs_tensor_read(const char* path, rs_tensor** out);
RS_API rs_status rs_tensor_write(const rs_tensor* tensor, const char* path);
RS_API void rs_tensor_destroy(rs_tensor* tensor);
RS_API rs_status rs_tensor_info_get(const rs_tensor* tensor,
                                    rs_tensor_info* out);
RS_API const char* rs_tensor_family(const rs_tensor* tensor);
/* Canonical entry i: indices (tuple_length of them), multiplicity, value. */
RS_API rs_status rs_tensor_entry(const rs_tensor* tensor, uint64_t index,
                                 int* indices, uint32_t* multiplicity,
                                 double* value);
RS_API rs_status rs_tensor_coefficient(const rs_tensor* tensor,
                                       const int* tuple, double* out);

/* ---- equations of motion ---- */

/* State arrays hold cutoff + 1 amplitudes. */
RS_API rs_status rs_rhs(const rs_tensor* tensor, const rs_complex* alpha,
                        rs_complex* out);

typedef struct rs_conserved {
  double norm;
  double energy;
  double hamiltonian;
  rs_complex charge;
} rs_conserved;

RS_API rs_status rs_conserved_set(const rs_tensor* tensor,
                                  const rs_complex* alpha, rs_conserved* out);

typedef struct rs_step_control {
  double step;
  /* <= 0 records every step. */
  double sample_interval;
  /* <= 0 disables the step-halving controller. */
  double halving_tolerance;
  double min_step;
} rs_step_control;

RS_API rs_step_control rs_step_control_default(void);

typedef struct rs_drift {
  double norm;
  double energy;
  double hamiltonian;
  double charge;
} rs_drift;

RS_API rs_status rs_integrate(const rs_tensor* tensor, const rs_complex* alpha0,
                              double t_end, const rs_step_control* control,
                              rs_trajectory** out);
RS_API rs_status rs_evolve_to(const rs_tensor* tensor, const rs_complex* alpha0,
                              double duration, double step, rs_complex* out);
RS_API void rs_trajectory_destroy(rs_trajectory* trajectory);
RS_API size_t rs_trajectory_size(const rs_trajectory* trajectory);
RS_API int rs_trajectory_cutoff(const rs_trajectory* trajectory);
RS_API rs_status rs_trajectory_sample(const rs_trajectory* trajectory,
                                      size_t index, double* time,
                                      rs_complex* state,
                                      rs_conserved* conserved);
RS_API rs_status rs_trajectory_drift(const rs_trajectory* trajectory,
                                     rs_drift* out);
/* Manifold-fit columns are appended when the trajectory carries fits. */
RS_API rs_status rs_trajectory_write_csv(const rs_trajectory* trajectory,
                                         const char* path);

/* ---- stationary states ---- */

RS_API rs_status rs_state_random(uint64_t seed, int cutoff, rs_complex* out);
RS_API rs_status rs_state_single_mode(int mode, int cutoff, rs_complex amplitude,
                                      rs_complex* out);
RS_API rs_status rs_state_mode0(rs_weight g, rs_complex p, int cutoff,
                                rs_complex* out);
RS_API rs_status rs_state_modeN(double g, rs_complex p, int mode, int cutoff,
                                rs_complex* out);
/* c_0..c_mode. */
RS_API rs_status rs_partial_fractions(double g, rs_complex p, int mode,
                                      rs_complex* out);
RS_API rs_status rs_magnetic_translate(const rs_complex* alpha, int cutoff,
                                       rs_complex p, rs_complex* out);
RS_API rs_status rs_lambda_mode0(double g, rs_complex p, double* out);

typedef struct rs_stationarity {
  double lambda;
  double residual;
  double imag_ratio;
  int window;
} rs_stationarity;

/* window < 0 verifies every mode. */
RS_API rs_status rs_verify_stationary(const rs_tensor* tensor,
                                      const rs_complex* alpha, int window,
                                      rs_stationarity* out);
RS_API rs_status rs_write_state_csv(const rs_complex* alpha, int cutoff,
                                    const char* path);

/* ---- invariant manifold ---- */

typedef struct rs_manifold_point {
  rs_complex a;
  rs_complex b;
  rs_complex p;
} rs_manifold_point;

typedef struct rs_manifold_fit {
  rs_manifold_point point;
  double residual;
} rs_manifold_fit;

RS_API rs_status rs_state_manifold(rs_manifold_point point, rs_weight g,
                                   int cutoff, rs_complex* out);
/* guess may be NULL. */
RS_API rs_status rs_fit_manifold(const rs_complex* beta, int cutoff,
                                 const rs_manifold_point* guess,
                                 rs_manifold_fit* out);
/* Integrates from the manifold state and fits every sample; the fits stay
   attached to the returned trajectory. */
RS_API rs_status rs_manifold_track(const rs_tensor* tensor,
                                   rs_manifold_point point0, double t_end,
                                   const rs_step_control* control,
                                   rs_trajectory** out,
                                   double* max_residual);
RS_API rs_status rs_trajectory_fit(const rs_trajectory* trajectory,
                                   size_t index, rs_manifold_fit* out);

#define RS_MAX_RECURRENCES 64

typedef struct rs_period {
  int found;
  int degenerate;
  double period;
  double mismatch;
  double d_max;
  size_t recurrence_count;
  double recurrences[RS_MAX_RECURRENCES];
} rs_period;

/* refine_step > 0 re-minimizes the spectrum distance by integration. */
RS_API rs_status rs_spectrum_period(const rs_tensor* tensor,
                                    const rs_trajectory* trajectory,
                                    double refine_step, rs_period* out);

#ifdef __cplusplus
}
#endif

#endif
