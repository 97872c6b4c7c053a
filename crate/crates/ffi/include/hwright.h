/*
 * C interface to the hwright library. Every fallible call returns an
 * HwcStatus; on failure hwc_last_error() describes the cause.
 */

#ifndef HWRIGHT_H
#define HWRIGHT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HwcImageTarget {
  HWC_IMAGE_TARGET_STARLIKE_L1 = 0,
  HWC_IMAGE_TARGET_CONVEX_L2 = 1,
} HwcImageTarget;

typedef enum HwcQuantity {
  HWC_QUANTITY_DTHETA_ARG_F = 0,
  HWC_QUANTITY_DTHETA_ARG_FTHETA = 1,
  HWC_QUANTITY_JACOBIAN_MARGIN = 2,
} HwcQuantity;

typedef enum HwcStatus {
  HWC_STATUS_OK = 0,
  HWC_STATUS_DOMAIN = 2,
  HWC_STATUS_NON_CONVERGENCE = 3,
  HWC_STATUS_IO = 4,
  HWC_STATUS_SINGULAR = 5,
  HWC_STATUS_SPEC = 6,
  HWC_STATUS_NULL_POINTER = 7,
  HWC_STATUS_PANIC = 8,
} HwcStatus;

/**
 * Opaque image coefficients `L(f)`.
 */
typedef struct HwcImage HwcImage;

/**
 * `alpha, beta, gamma, delta` of a Wright kernel.
 */
typedef struct HwcParams {
  double alpha;
  double beta;
  double gamma;
  double delta;
} HwcParams;

typedef struct HwcComplex {
  double re;
  double im;
} HwcComplex;

typedef struct HwcControl {
  size_t max_terms;
  double tail_tol;
} HwcControl;

typedef struct HwcDerivs {
  double w1;
  double wp1;
  double wpp1;
  double wppp1;
} HwcDerivs;

/**
 * One inequality `lhs <= rhs`.
 */
typedef struct HwcReport {
  double lhs;
  double rhs;
  double margin;
  bool satisfied;
} HwcReport;

typedef struct HwcSweepSummary {
  double min_value;
  double argmin_r;
  double argmin_theta;
  /**
   * Sites below the threshold, singular ones included.
   */
  size_t violations;
  size_t singular;
} HwcSweepSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *hwc_last_error(void);

/**
 * Static description of a status code.
 */
const char *hwc_status_message(enum HwcStatus status);

/**
 * Four-parameter Wright function at `z`.
 *
 * # Safety
 * `p` and `out` must be valid; `ctrl` may be null.
 */
enum HwcStatus hwc_wright_eval(const struct HwcParams *p,
                               struct HwcComplex z,
                               const struct HwcControl *ctrl,
                               struct HwcComplex *out_value);

/**
 * Normalized function `z Γ(α)Γ(γ) 𝒲(z)` at `z`.
 *
 * # Safety
 * As [`hwc_wright_eval`].
 */
enum HwcStatus hwc_normalized_eval(const struct HwcParams *p,
                                   struct HwcComplex z,
                                   const struct HwcControl *ctrl,
                                   struct HwcComplex *out_value);

/**
 * `W(1)` through `W'''(1)` of the normalized function.
 *
 * # Safety
 * `p` and `out_derivs` must be valid; `ctrl` may be null.
 */
enum HwcStatus hwc_derivs_at_one(const struct HwcParams *p,
                                 const struct HwcControl *ctrl,
                                 struct HwcDerivs *out_derivs);

/**
 * Printed and derived forms of a theorem hypothesis. `theorem` is a
 * NUL-terminated id such as `"T3.1"`; `p2` may be null to reuse `p1`.
 *
 * # Safety
 * `theorem`, `p1`, `out_stated` and `out_derived` must be valid; `p2` and
 * `ctrl` may be null.
 */
enum HwcStatus hwc_stated_hypothesis(const char *theorem,
                                     const struct HwcParams *p1,
                                     const struct HwcParams *p2,
                                     struct HwcComplex sigma,
                                     double order,
                                     double b1,
                                     const struct HwcControl *ctrl,
                                     struct HwcReport *out_stated,
                                     struct HwcReport *out_derived);

/**
 * Image of `f = h + conj(g)` under the operator: `a` holds `A_2..`, `b`
 * holds `B_1..` (with `|B_1| < 1`). `p2` may be null to reuse `p1`.
 *
 * # Safety
 * `a`/`b` must point to `na`/`nb` elements (may be null when the count is
 * zero); `p1` and `out_image` must be valid.
 */
enum HwcStatus hwc_image_convolve(const struct HwcComplex *a,
                                  size_t na,
                                  const struct HwcComplex *b,
                                  size_t nb,
                                  const struct HwcParams *p1,
                                  const struct HwcParams *p2,
                                  struct HwcComplex sigma,
                                  struct HwcImage **out_image);

/**
 * Image given directly by its coefficients: `ha` from `z^2` in `H`, `gb`
 * from `z` in `sigma G`.
 *
 * # Safety
 * As [`hwc_image_convolve`] for the arrays; `out_image` must be valid.
 */
enum HwcStatus hwc_image_from_coefficients(const struct HwcComplex *ha,
                                           size_t nha,
                                           const struct HwcComplex *gb,
                                           size_t ngb,
                                           struct HwcImage **out_image);

/**
 * Releases an image. Null is ignored.
 *
 * # Safety
 * `image` must come from an `hwc_image_*` constructor and not be used
 * afterwards.
 */
void hwc_image_free(struct HwcImage *image);

/**
 * `L(f)(r e^{i theta})`.
 *
 * # Safety
 * `image` and `out_value` must be valid.
 */
enum HwcStatus hwc_image_eval(const struct HwcImage *image,
                              double r,
                              double theta,
                              struct HwcComplex *out_value);

/**
 * Coefficient criterion for starlikeness or convexity of order `order`.
 *
 * # Safety
 * `image` and `out_report` must be valid.
 */
enum HwcStatus hwc_image_criterion(const struct HwcImage *image,
                                   enum HwcImageTarget target,
                                   double order,
                                   struct HwcReport *out_report);

/**
 * Samples a geometric quantity over `radii` x `theta_count` angles.
 *
 * # Safety
 * `image` and `out_summary` must be valid; `radii` must point to
 * `n_radii` values.
 */
enum HwcStatus hwc_image_sweep(const struct HwcImage *image,
                               enum HwcQuantity quantity,
                               const double *radii,
                               size_t n_radii,
                               size_t theta_count,
                               double threshold,
                               struct HwcSweepSummary *out_summary);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HWRIGHT_H */
