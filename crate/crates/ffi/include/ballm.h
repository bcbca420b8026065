#ifndef BALLM_H
#define BALLM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BallmStatus {
  BALLM_STATUS_OK = 0,
  BALLM_STATUS_NULL_POINTER = 1,
  BALLM_STATUS_DOMAIN = 2,
  BALLM_STATUS_INVALID = 3,
  BALLM_STATUS_UNSUPPORTED = 4,
  BALLM_STATUS_EMPTY = 5,
  BALLM_STATUS_NO_CONVERGENCE = 6,
  BALLM_STATUS_UNKNOWN_SOLID = 7,
  BALLM_STATUS_PANIC = 8,
} BallmStatus;

/**
 * Opaque intersection of closed balls.
 */
typedef struct BallmBallSet BallmBallSet;

typedef struct BallmMeasures {
  double volume;
  double surface_area;
  double mean_width;
} BallmMeasures;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or an empty string. The
 * pointer stays valid until the next call on the same thread.
 */
const char *ballm_last_error(void);

/**
 * Builds a ball set from `n` centers (`3n` doubles, xyz interleaved) and
 * `n` radii.
 *
 * # Safety
 * `centers` must point to `3n` doubles, `radii` to `n` doubles and `out`
 * to writable storage for one pointer.
 */
enum BallmStatus ballm_ballset_new(const double *centers,
                                   const double *radii,
                                   size_t n,
                                   struct BallmBallSet **out_set);

/**
 * Builds one of the named unit-radius sets: `dihedron`, `trihedron`,
 * `tetrahedron`, `hexahedron`, `dodecahedron`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out_set` writable.
 */
enum BallmStatus ballm_ballset_canonical(const char *name, struct BallmBallSet **out_set);

/**
 * Releases a set. Null is accepted.
 *
 * # Safety
 * `set` must come from this library and not be used afterwards.
 */
void ballm_ballset_free(struct BallmBallSet *set);

/**
 * # Safety
 * `set` must be a live handle and `out_len` writable.
 */
enum BallmStatus ballm_ballset_len(const struct BallmBallSet *set, size_t *out_len);

/**
 * # Safety
 * `point` must point to three doubles.
 */
enum BallmStatus ballm_ballset_contains(const struct BallmBallSet *set,
                                        const double *point,
                                        bool *out_inside);

/**
 * Exact measures of an equal-radius set. An empty intersection gives zeros
 * and sets `*out_empty`.
 *
 * # Safety
 * All pointers must be valid; `out_empty` may be null.
 */
enum BallmStatus ballm_ballset_measures(const struct BallmBallSet *set,
                                        struct BallmMeasures *out_measures,
                                        bool *out_empty);

/**
 * Support function h(u) = max over the set of u·x; `u` need not be unit.
 *
 * # Safety
 * `u` must point to three doubles.
 */
enum BallmStatus ballm_ballset_support(const struct BallmBallSet *set,
                                       const double *u,
                                       double *out_value);

/**
 * Monte Carlo volume with its standard error. Deterministic in `seed`.
 *
 * # Safety
 * `out_value` and `out_std_error` must be writable; the latter may be null.
 */
enum BallmStatus ballm_ballset_mc_volume(const struct BallmBallSet *set,
                                         uint64_t samples,
                                         uint64_t seed,
                                         double *out_value,
                                         double *out_std_error);

/**
 * # Safety
 * `out_measures` must be writable.
 */
enum BallmStatus ballm_dihedron(struct BallmMeasures *out_measures);

/**
 * # Safety
 * `out_measures` must be writable.
 */
enum BallmStatus ballm_trihedron(struct BallmMeasures *out_measures);

/**
 * # Safety
 * `out_measures` must be writable.
 */
enum BallmStatus ballm_reuleaux_tetrahedron(struct BallmMeasures *out_measures);

/**
 * # Safety
 * `out_measures` must be writable.
 */
enum BallmStatus ballm_meissner(struct BallmMeasures *out_measures);

/**
 * Lens of two unit balls with cap angular radius `phi` in [0, pi/2].
 *
 * # Safety
 * `out_measures` must be writable.
 */
enum BallmStatus ballm_lens(double phi, struct BallmMeasures *out_measures);

/**
 * # Safety
 * `out_measures` must be writable.
 */
enum BallmStatus ballm_capped_cylinder(double ell, struct BallmMeasures *out_measures);

/**
 * # Safety
 * `out_measures` must be writable.
 */
enum BallmStatus ballm_symmetric_segment(double phi, struct BallmMeasures *out_measures);

/**
 * # Safety
 * `out_measures` must be writable.
 */
enum BallmStatus ballm_cap_body(double phi, struct BallmMeasures *out_measures);

/**
 * Volume of the `n`-dimensional lens of two unit balls.
 *
 * # Safety
 * `out_value` must be writable.
 */
enum BallmStatus ballm_ndim_lens_volume(uint32_t n, double phi, double *out_value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BALLM_H */
