#ifndef MIMETIC_DETECT_H
#define MIMETIC_DETECT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every call.
 */
typedef enum MdStatus {
  MD_STATUS_OK = 0,
  MD_STATUS_NULL_POINTER = 1,
  MD_STATUS_INVALID_ARGUMENT = 2,
  MD_STATUS_UNSUPPORTED_ORDER = 3,
  MD_STATUS_GRID_TOO_SMALL = 4,
  MD_STATUS_DIMENSION_MISMATCH = 5,
  MD_STATUS_ZERO_IMAGE = 6,
  MD_STATUS_TOO_FEW_SAMPLES = 7,
  MD_STATUS_IO = 8,
  MD_STATUS_DECODE = 9,
  MD_STATUS_PANIC = 10,
} MdStatus;

typedef enum MdVerdict {
  MD_VERDICT_CLEAN = 0,
  MD_VERDICT_ADVERSARIAL = 1,
  MD_VERDICT_UNTHRESHOLDED = 2,
} MdVerdict;

/**
 * Opaque detector handle.
 */
typedef struct MdDetector MdDetector;

/**
 * Opaque 2D gradient operator handle.
 */
typedef struct MdGradient MdGradient;

/**
 * Outcome of one detection. `tau` is NaN when no threshold is set.
 */
typedef struct MdReport {
  uint32_t k;
  double e_h1;
  double e_l2;
  double t;
  double tau;
  enum MdVerdict verdict;
} MdReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code; unknown codes get a generic text.
 */
const char *md_status_message(int32_t status);

/**
 * Message for the last failure on this thread, or null if none. Valid
 * until the next failing call on the same thread.
 */
const char *md_last_error(void);

/**
 * Creates a detector of order `k` with no threshold.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum MdStatus md_detector_new(uint32_t k, struct MdDetector **out);

/**
 * Releases a detector. Null is ignored.
 *
 * # Safety
 * `detector` must come from [`md_detector_new`] and not be used afterwards.
 */
void md_detector_free(struct MdDetector *detector);

/**
 * Sets the decision threshold. Pass NaN to remove it.
 *
 * # Safety
 * `detector` must be a live handle.
 */
enum MdStatus md_detector_set_threshold(struct MdDetector *detector, double tau);

/**
 * Scores a row-major `height × width` image.
 *
 * # Safety
 * `pixels` must point to `height * width` doubles; `out` must be writable.
 */
enum MdStatus md_detector_evaluate(const struct MdDetector *detector,
                                   const double *pixels,
                                   size_t height,
                                   size_t width,
                                   struct MdReport *out);

/**
 * Loads a PNG or binary PGM file as grayscale and scores it.
 *
 * # Safety
 * `path` must be a nul-terminated UTF-8 string; `out` must be writable.
 */
enum MdStatus md_detector_evaluate_file(const struct MdDetector *detector,
                                        const char *path,
                                        struct MdReport *out);

/**
 * Builds the order-`k` gradient for a `width × height` cell grid.
 *
 * # Safety
 * `out` must be writable.
 */
enum MdStatus md_gradient_new(uint32_t k, size_t width, size_t height, struct MdGradient **out);

/**
 * Releases a gradient operator. Null is ignored.
 *
 * # Safety
 * `gradient` must come from [`md_gradient_new`] and not be used afterwards.
 */
void md_gradient_free(struct MdGradient *gradient);

/**
 * Operator shape: rows are faces, columns are extended nodes.
 *
 * # Safety
 * `gradient` must be live; `rows` and `cols` must be writable.
 */
enum MdStatus md_gradient_shape(const struct MdGradient *gradient, size_t *rows, size_t *cols);

/**
 * Applies the operator to an extended field of `(width+2)(height+2)`
 * values, x fastest, writing all face values.
 *
 * # Safety
 * `field` must hold `field_len` doubles and `out` `out_len` doubles.
 */
enum MdStatus md_gradient_apply(const struct MdGradient *gradient,
                                const double *field,
                                size_t field_len,
                                double *out,
                                size_t out_len);

/**
 * Seeded sign noise `±eps`, row-major, written to `out`.
 *
 * # Safety
 * `out` must hold `height * width` doubles.
 */
enum MdStatus md_sign_noise(size_t height, size_t width, double eps, uint64_t seed, double *out);

/**
 * Deterministic low-frequency control of amplitude `eps`.
 *
 * # Safety
 * `out` must hold `height * width` doubles.
 */
enum MdStatus md_smooth_control(size_t height, size_t width, double eps, double *out);

/**
 * Mann–Whitney AUC of perturbed over clean scores, ties counted 1/2.
 *
 * # Safety
 * Score pointers must hold the stated counts; `out` must be writable.
 */
enum MdStatus md_auc(const double *clean,
                     size_t n_clean,
                     const double *perturbed,
                     size_t n_perturbed,
                     double *out);

/**
 * Threshold at level `alpha` from at least 20 clean scores.
 *
 * # Safety
 * `scores` must hold `n` doubles; `tau` must be writable.
 */
enum MdStatus md_calibrate(uint32_t k, const double *scores, size_t n, double alpha, double *tau);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MIMETIC_DETECT_H */
