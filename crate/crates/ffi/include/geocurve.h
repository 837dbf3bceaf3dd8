#ifndef GEOCURVE_H
#define GEOCURVE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum GcStatus {
    GC_STATUS_OK = 0,
    GC_STATUS_NULL_POINTER = 1,
    /**
     * Bad lengths, parameters, weights or knots.
     */
    GC_STATUS_INVALID_ARGUMENT = 2,
    /**
     * A point is not in the space, or inputs leave the uniqueness domain.
     */
    GC_STATUS_DOMAIN_ERROR = 3,
    /**
     * The Karcher iteration hit its iteration cap.
     */
    GC_STATUS_NON_CONVERGENCE = 4,
    /**
     * The space lacks log/exp maps needed by the operation.
     */
    GC_STATUS_UNSUPPORTED = 5,
    GC_STATUS_PANIC = 6,
} GcStatus;

/**
 * Opaque handle to a geodesic space.
 */
typedef struct GcSpace GcSpace;

/**
 * Numbers from the equilateral spherical triangle comparison.
 */
typedef struct GcCounterexample {
    double alpha;
    double cos_theta;
    double z;
    /**
     * Midpoint of the quadratic Bézier curve.
     */
    double p_half[3];
    double midpoint_error;
    /**
     * Smallest `|<L(s), p2 x p0>|` over the sampled `s` grid.
     */
    double min_abs_inner;
    double lower_bound;
    bool verdict;
} GcCounterexample;

/**
 * Message of the last failed call on this thread ("" after a success).
 * The pointer stays valid until the next call on the same thread.
 */
const char *gc_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *gc_version(void);

/**
 * Euclidean space of dimension `dim`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum GcStatus gc_space_euclidean(uintptr_t dim, struct GcSpace **out);

/**
 * The unit sphere in R^3.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum GcStatus gc_space_sphere(struct GcSpace **out);

/**
 * Taxicab plane whose representative geodesics run along slope `k`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum GcStatus gc_space_manhattan(double k, struct GcSpace **out);

/**
 * Paris metric over R^len with the given hub.
 *
 * # Safety
 * `hub` must point to `len` doubles and `out` must be writable.
 */
enum GcStatus gc_space_paris(const double *hub, uintptr_t len, struct GcSpace **out);

/**
 * Determinant-one SPD 2x2 matrices, points stored as `(a, b, c)` for
 * `[[a, b], [b, c]]`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum GcStatus gc_space_spd2(struct GcSpace **out);

/**
 * Rigid motions, points stored as row-major 4x4 matrices
 * `[[1, 0], [b, R]]`: first row `(1, 0, 0, 0)`, translation `b` in the
 * first column and the rotation `R` in the lower right block.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum GcStatus gc_space_e3(struct GcSpace **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `space` must come from a `gc_space_*` constructor and not be used again.
 */
void gc_space_free(struct GcSpace *space);

/**
 * Number of doubles per point (0 for a null handle).
 *
 * # Safety
 * `space` must be null or a live handle.
 */
uintptr_t gc_space_point_dim(const struct GcSpace *space);

/**
 * Distance between two points.
 *
 * # Safety
 * `x` and `y` must hold one point each; `out` must be writable.
 */
enum GcStatus gc_distance(const struct GcSpace *space,
                          const double *x,
                          const double *y,
                          double *out);

/**
 * Point at fraction `t` of the geodesic from `x` to `y`.
 *
 * # Safety
 * `x` and `y` must hold one point each; `out` must have room for one point.
 */
enum GcStatus gc_affine(const struct GcSpace *space,
                        double t,
                        const double *x,
                        const double *y,
                        double *out);

/**
 * Bézier curve point at `t` by de Casteljau. With non-null `weights`
 * (`count` positive values) the rational scheme is used.
 *
 * # Safety
 * `points` must hold `count` points, `weights` null or `count` doubles,
 * and `out` room for one point.
 */
enum GcStatus gc_bezier_eval(const struct GcSpace *space,
                             const double *points,
                             uintptr_t count,
                             const double *weights,
                             double t,
                             double *out);

/**
 * Spline point at knot parameter `t` by de Boor.
 *
 * Open splines take `count + degree + 1` knots. Closed splines ignore
 * `knots` (pass null) and use unit spacing with `t` in
 * `[degree, count + degree]`.
 *
 * # Safety
 * `points` must hold `count` points, `knots` `knot_len` doubles (unless
 * `closed`), and `out` room for one point.
 */
enum GcStatus gc_spline_eval(const struct GcSpace *space,
                             const double *points,
                             uintptr_t count,
                             uintptr_t degree,
                             const double *knots,
                             uintptr_t knot_len,
                             bool closed,
                             double t,
                             double *out);

/**
 * Centroid curve point at `t`: the weighted mean with Bernstein weights.
 *
 * # Safety
 * `points` must hold `count` points and `out` room for one point.
 */
enum GcStatus gc_centroid_eval(const struct GcSpace *space,
                               const double *points,
                               uintptr_t count,
                               double t,
                               double *out);

/**
 * Weighted Karcher mean. Weights must be nonnegative and sum to one.
 * `iterations` may be null.
 *
 * # Safety
 * `points` must hold `count` points, `weights` `count` doubles, `out` room
 * for one point.
 */
enum GcStatus gc_karcher_mean(const struct GcSpace *space,
                              const double *points,
                              const double *weights,
                              uintptr_t count,
                              double *out,
                              uintptr_t *iterations);

/**
 * Compares the quadratic Bézier curve and the centroid curve of an
 * equilateral spherical triangle with side `alpha` in (0, pi/2].
 *
 * # Safety
 * `out` must be a valid pointer to a `GcCounterexample`.
 */
enum GcStatus gc_counterexample(double alpha, struct GcCounterexample *out);

#endif  /* GEOCURVE_H */
