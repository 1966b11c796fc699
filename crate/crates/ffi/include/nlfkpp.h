#ifndef NLFKPP_H
#define NLFKPP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum NlfkppStatus {
  NLFKPP_STATUS_OK = 0,
  NLFKPP_STATUS_NULL_POINTER = 1,
  NLFKPP_STATUS_INVALID_ARGUMENT = 2,
  NLFKPP_STATUS_NO_CONVERGENCE = 3,
  NLFKPP_STATUS_NUMERICAL_FAILURE = 4,
  NLFKPP_STATUS_BUFFER_TOO_SMALL = 5,
  NLFKPP_STATUS_PANIC = 6,
} NlfkppStatus;

/**
 * Rear-tail classification of a travelling wave.
 */
typedef enum NlfkppTailClass {
  NLFKPP_TAIL_CLASS_OSCILLATORY = 0,
  NLFKPP_TAIL_CLASS_MONOTONE = 1,
} NlfkppTailClass;

/**
 * Opaque periodic steady state.
 */
typedef struct NlfkppSteadyState NlfkppSteadyState;

/**
 * Opaque travelling-wave profile.
 */
typedef struct NlfkppTwProfile NlfkppTwProfile;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null after a success.
 * The pointer stays valid until the next call into this library on the thread.
 */
const char *nlfkpp_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *nlfkpp_version(void);

/**
 * Growth rate symbol about `u = 0`.
 */
double nlfkpp_w0(double k, double d);

/**
 * Growth rate symbol about `u = 1`; negative means unstable.
 */
double nlfkpp_w1(double k, double d);

/**
 * Smallest wavenumber above zero at which `u = 1` loses stability as `D → 0`.
 */
double nlfkpp_k0(void);

/**
 * `r`-th maximum of the instability function and its location.
 *
 * # Safety
 * `value` must be a valid pointer; `location` may be null.
 */
enum NlfkppStatus nlfkpp_delta_max(size_t r, double *value, double *location);

/**
 * Wavelength interval `(λ₋, λ₊)` of tongue `i` at diffusivity `d`.
 *
 * # Safety
 * `lambda_minus` and `lambda_plus` must be valid pointers.
 */
enum NlfkppStatus nlfkpp_tongue_boundaries(size_t i,
                                           double d,
                                           double *lambda_minus,
                                           double *lambda_plus);

/**
 * Diffusivity and rate at which the minimum-speed wave tail changes type.
 *
 * # Safety
 * `sigma` and `d` must be valid pointers.
 */
enum NlfkppStatus nlfkpp_oscillation_threshold(double *sigma, double *d);

/**
 * Eigenvalue of the inner transition-layer problem on `[−x_left, x_right]`.
 *
 * # Safety
 * `l` must be a valid pointer.
 */
enum NlfkppStatus nlfkpp_transition_eigenvalue(double x_left, double x_right, size_t n, double *l);

/**
 * Peak height of the rescaled spike solution at `lambda_bar`.
 *
 * # Safety
 * `v0` must be a valid pointer.
 */
enum NlfkppStatus nlfkpp_spike_height(double lambda_bar, double *v0);

/**
 * Solves for the travelling wave of speed `v` at diffusivity `d`.
 *
 * # Safety
 * `out` must be a valid pointer. The handle is released with [`nlfkpp_tw_free`].
 */
enum NlfkppStatus nlfkpp_tw_solve(double d, double v, struct NlfkppTwProfile **out);

/**
 * Number of grid points in the profile, or 0 for a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
size_t nlfkpp_tw_len(const struct NlfkppTwProfile *h);

/**
 * Copies the grid and profile into caller buffers of length `len`.
 *
 * # Safety
 * `h` must be a live handle; `z` and `u` must hold `len` values.
 */
enum NlfkppStatus nlfkpp_tw_copy(const struct NlfkppTwProfile *h, double *z, double *u, size_t len);

/**
 * Profile value at `z`, interpolated; NaN for a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
double nlfkpp_tw_eval(const struct NlfkppTwProfile *h, double z);

/**
 * Rear tail type with decay rate `a` and frequency `b` of `u − 1 ∝ e^{az} cos(bz)`.
 *
 * # Safety
 * `h` and `class` must be valid; `a` and `b` may be null.
 */
enum NlfkppStatus nlfkpp_tw_tail(const struct NlfkppTwProfile *h,
                                 enum NlfkppTailClass *class_,
                                 double *a,
                                 double *b);

/**
 * Releases a profile handle; null is ignored.
 *
 * # Safety
 * `h` must be null or a handle not yet freed.
 */
void nlfkpp_tw_free(struct NlfkppTwProfile *h);

/**
 * Solves for the even periodic state of wavelength `lambda` on `n` half-period
 * nodes; `n = 0` picks a default resolution.
 *
 * # Safety
 * `out` must be a valid pointer. The handle is released with [`nlfkpp_steady_free`].
 */
enum NlfkppStatus nlfkpp_steady_solve(double lambda,
                                      double d,
                                      size_t n,
                                      struct NlfkppSteadyState **out);

/**
 * Number of half-period nodes, or 0 for a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
size_t nlfkpp_steady_len(const struct NlfkppSteadyState *h);

/**
 * Copies the profile on `[0, λ/2]` into `f`, which holds `len` values.
 *
 * # Safety
 * `h` must be a live handle; `f` must hold `len` values.
 */
enum NlfkppStatus nlfkpp_steady_copy(const struct NlfkppSteadyState *h, double *f, size_t len);

/**
 * Peak value, mass over one period and peak-to-trough amplitude.
 *
 * # Safety
 * `h` must be a live handle; the outputs may be null.
 */
enum NlfkppStatus nlfkpp_steady_summary(const struct NlfkppSteadyState *h,
                                        double *u_max,
                                        double *mass,
                                        double *alpha);

/**
 * Releases a steady-state handle; null is ignored.
 *
 * # Safety
 * `h` must be null or a handle not yet freed.
 */
void nlfkpp_steady_free(struct NlfkppSteadyState *h);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NLFKPP_H */
