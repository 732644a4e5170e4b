#ifndef BINGHAM_FFI_H
#define BINGHAM_FFI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every call.
 */
typedef enum BhStatus {
  BH_STATUS_OK = 0,
  BH_STATUS_NULL_POINTER = 1,
  BH_STATUS_DOMAIN = 2,
  BH_STATUS_CONCENTRATION_OVERFLOW = 3,
  BH_STATUS_STAGE_MISMATCH = 4,
  BH_STATUS_PANIC = 5,
} BhStatus;

typedef enum BhStage {
  BH_STAGE_PREDICTED = 0,
  BH_STAGE_ESTIMATED = 1,
} BhStage;

/**
 * Opaque filter handle.
 */
typedef struct BhFilter BhFilter;

/**
 * Opaque sampler handle with its own random stream.
 */
typedef struct BhSampler BhSampler;

/**
 * Bingham parameters: orientation matrix `m` row-major, then `z1 <= 0`.
 */
typedef struct BhParams {
  double m[4];
  double z1;
} BhParams;

/**
 * A unit vector (or any point in the plane when used as input; inputs are
 * normalized).
 */
typedef struct BhVec2 {
  double c1;
  double c2;
} BhVec2;

/**
 * Symmetric second-moment matrix `[[s11, s12], [s12, s22]]`.
 */
typedef struct BhCov {
  double s11;
  double s12;
  double s22;
} BhCov;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code; unknown codes get a generic text.
 * Never null.
 */
const char *bh_status_message(int32_t status);

/**
 * Detail of the last failed call on this thread, or an empty string. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *bh_last_error_message(void);

/**
 * `1F1(1/2, 1, z)` for `z <= 1`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum BhStatus bh_kummer_half_one(double z, double *out);

/**
 * `1F1(3/2, 2, z)` for `z <= 1`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum BhStatus bh_kummer_threehalves_two(double z, double *out);

/**
 * Normalization constant of a distribution with concentration `z1`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum BhStatus bh_normalization_constant(double z1, double *out);

/**
 * Density at the unit vector along `x`.
 *
 * # Safety
 * `p` must be null or point to a valid `BhParams`; `out` must be null or
 * valid for writes.
 */
enum BhStatus bh_pdf(const struct BhParams *p, struct BhVec2 x, double *out);

/**
 * Mode (second column of `m`).
 *
 * # Safety
 * `p` must be null or point to a valid `BhParams`; `out` must be null or
 * valid for writes.
 */
enum BhStatus bh_mode(const struct BhParams *p, struct BhVec2 *out);

/**
 * Renormalized product of two densities.
 *
 * # Safety
 * `a` and `b` must be null or point to valid `BhParams`; `out` must be null
 * or valid for writes.
 */
enum BhStatus bh_multiply(const struct BhParams *a, const struct BhParams *b, struct BhParams *out);

/**
 * Second-moment matrix of a distribution.
 *
 * # Safety
 * `p` must be null or point to a valid `BhParams`; `out` must be null or
 * valid for writes.
 */
enum BhStatus bh_covariance(const struct BhParams *p, struct BhCov *out);

/**
 * Parameters whose second-moment matrix is `s`.
 *
 * # Safety
 * `s` must be null or point to a valid `BhCov`; `out` must be null or valid
 * for writes.
 */
enum BhStatus bh_mle_from_covariance(const struct BhCov *s, struct BhParams *out);

/**
 * Group composition (complex multiplication) of two unit vectors.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum BhStatus bh_compose(struct BhVec2 x, struct BhVec2 y, struct BhVec2 *out);

/**
 * Second-moment matrix of the composition of independent variables.
 *
 * # Safety
 * `a` and `b` must be null or point to valid `BhCov`; `out` must be null or
 * valid for writes.
 */
enum BhStatus bh_compose_cov(const struct BhCov *a, const struct BhCov *b, struct BhCov *out);

/**
 * Moment-matched distribution of the composition of independent variables.
 *
 * # Safety
 * `a` and `b` must be null or point to valid `BhParams`; `out` must be null
 * or valid for writes.
 */
enum BhStatus bh_compose_dist(const struct BhParams *a,
                              const struct BhParams *b,
                              struct BhParams *out);

/**
 * Creates a filter from a prior awaiting its first measurement update.
 *
 * # Safety
 * `prior` must be null or point to a valid `BhParams`; `out` must be null or
 * valid for writes. The handle written to `out` must be released with
 * [`bh_filter_free`].
 */
enum BhStatus bh_filter_new(const struct BhParams *prior, struct BhFilter **out);

/**
 * Releases a filter. Null is ignored.
 *
 * # Safety
 * `f` must be null or a handle from [`bh_filter_new`] not yet freed.
 */
void bh_filter_free(struct BhFilter *f);

/**
 * Prediction step; the filter must hold an estimate.
 *
 * # Safety
 * `f` must be null or a live filter handle; `system_noise` must be null or
 * point to a valid `BhParams`.
 */
enum BhStatus bh_filter_predict(struct BhFilter *f, const struct BhParams *system_noise);

/**
 * Measurement update with measurement `z`; the filter must hold a
 * prediction.
 *
 * # Safety
 * `f` must be null or a live filter handle; `meas_noise` must be null or
 * point to a valid `BhParams`.
 */
enum BhStatus bh_filter_update(struct BhFilter *f,
                               const struct BhParams *meas_noise,
                               struct BhVec2 z);

/**
 * Current distribution of the filter.
 *
 * # Safety
 * `f` must be null or a live filter handle; `out` must be null or valid for
 * writes.
 */
enum BhStatus bh_filter_params(const struct BhFilter *f, struct BhParams *out);

/**
 * Current stage of the filter.
 *
 * # Safety
 * `f` must be null or a live filter handle; `out` must be null or valid for
 * writes.
 */
enum BhStatus bh_filter_stage(const struct BhFilter *f, enum BhStage *out);

/**
 * Creates a sampler for `p` seeded with `seed`.
 *
 * # Safety
 * `p` must be null or point to a valid `BhParams`; `out` must be null or
 * valid for writes. The handle must be released with [`bh_sampler_free`].
 */
enum BhStatus bh_sampler_new(const struct BhParams *p, uint64_t seed, struct BhSampler **out);

/**
 * Releases a sampler. Null is ignored.
 *
 * # Safety
 * `s` must be null or a handle from [`bh_sampler_new`] not yet freed.
 */
void bh_sampler_free(struct BhSampler *s);

/**
 * Draws `n` samples into `out[0..n]`.
 *
 * # Safety
 * `s` must be null or a live sampler handle; `out` must be null or valid for
 * `n` writes.
 */
enum BhStatus bh_sampler_draw(struct BhSampler *s, struct BhVec2 *out, size_t n);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BINGHAM_FFI_H */
