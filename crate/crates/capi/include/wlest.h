/* C interface for the wlest estimation library. */

#ifndef WLEST_H
#define WLEST_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a C API call, mirroring the library's error categories.
 */
typedef enum WlestStatus {
  /**
   * The call succeeded.
   */
  WLEST_STATUS_OK = 0,
  /**
   * A required pointer was null or an argument was unusable as given.
   */
  WLEST_STATUS_INVALID_ARGUMENT = 1,
  /**
   * The inputs were rejected (dimensions, symmetry, parse failures).
   */
  WLEST_STATUS_VALIDATION_ERROR = 2,
  /**
   * A numerical step failed (singular or rank-deficient system).
   */
  WLEST_STATUS_NUMERICAL_ERROR = 3,
} WlestStatus;

/**
 * Estimator selector for [`wlest_estimate`].
 */
typedef enum WlestEstimator {
  /**
   * Best linear unbiased estimator on the complex measurements.
   */
  WLEST_ESTIMATOR_BLUE = 0,
  /**
   * Real part of the BLUE output; not unbiased-optimal on its own.
   */
  WLEST_ESTIMATOR_RE_BLUE = 1,
  /**
   * Best widely linear unbiased estimator on augmented measurements.
   */
  WLEST_ESTIMATOR_BWLUE = 2,
  /**
   * Widely linear minimum mean squared error estimator (needs a prior).
   */
  WLEST_ESTIMATOR_WLMMSE = 3,
  /**
   * Optimal unbiased estimator for real parameters under proper noise.
   */
  WLEST_ESTIMATOR_RBWLUE = 4,
} WlestEstimator;

/**
 * Opaque handle for a measurement model (H, noise statistics, optional
 * prior). Create with [`wlest_model_from_json`], release with
 * [`wlest_model_free`].
 */
typedef struct WlestModel WlestModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Returns the library version as a static NUL-terminated string.
 */
const char *wlest_version(void);

/**
 * Returns a description of the most recent failure on the calling thread,
 * or an empty string after a success. The pointer stays valid until the
 * next wlest call on the same thread.
 */
const char *wlest_last_error_message(void);

/**
 * Parses a model from a NUL-terminated JSON document (the same format the
 * CLI reads: an `H` matrix, `noise` covariance blocks, and an optional
 * `prior`). On success writes a handle to `out`; the caller owns it and
 * must release it with [`wlest_model_free`].
 *
 * # Safety
 * `json` must point to a valid NUL-terminated string and `out` to writable
 * pointer storage.
 */
enum WlestStatus wlest_model_from_json(const char *json, struct WlestModel **out);

/**
 * Releases a model handle. Passing null is a no-op.
 *
 * # Safety
 * `model` must be null or a handle from [`wlest_model_from_json`] that has
 * not been freed yet.
 */
void wlest_model_free(struct WlestModel *model);

/**
 * Returns the measurement count of a model, or 0 for a null handle.
 *
 * # Safety
 * `model` must be null or a live handle from [`wlest_model_from_json`].
 */
size_t wlest_model_ny(const struct WlestModel *model);

/**
 * Returns the parameter count of a model, or 0 for a null handle.
 *
 * # Safety
 * `model` must be null or a live handle from [`wlest_model_from_json`].
 */
size_t wlest_model_nx(const struct WlestModel *model);

/**
 * Runs one estimator on a measurement vector.
 *
 * `y_re` and `y_im` hold the measurement split into real and imaginary
 * parts; `y_len` must equal the model's measurement count. On success the
 * estimate is written to `x_re` and `x_im`, which must each hold the
 * model's parameter count. `x_var` is optional: when non-null it receives
 * the per-component error variance where the estimator provides one and
 * NaN where it does not.
 *
 * # Safety
 * All non-null pointers must reference buffers of the stated lengths.
 */
enum WlestStatus wlest_estimate(const struct WlestModel *model,
                                enum WlestEstimator estimator,
                                const double *y_re,
                                const double *y_im,
                                size_t y_len,
                                double *x_re,
                                double *x_im,
                                double *x_var);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WLEST_H */
