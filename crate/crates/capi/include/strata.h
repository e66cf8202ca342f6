#ifndef STRATA_H
#define STRATA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum StrataStatus {
  StrataStatus_Ok = 0,
  StrataStatus_InvalidArgument = 2,
  StrataStatus_PropertyViolation = 3,
  StrataStatus_ParseError = 4,
  StrataStatus_MathError = 5,
  StrataStatus_NullPointer = 6,
  StrataStatus_BufferTooSmall = 7,
  StrataStatus_Panic = 8,
} StrataStatus;

/**
 * Opaque nodal curve handle (floating-point chart coordinates).
 */
typedef struct StrataCurve StrataCurve;

/**
 * Opaque labelled tree handle.
 */
typedef struct StrataTree StrataTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent error on this thread; valid until the next
 * failing call. May be null if no error occurred yet.
 */
const char *strata_last_error_message(void);

/**
 * Library version as a static string; do not free.
 */
const char *strata_version(void);

/**
 * Release a string allocated by this library.
 *
 * # Safety
 * `s` must have been returned by a strata function and not freed before.
 */
void strata_string_free(char *s);

/**
 * Parse a tree from its JSON wire format.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string, `out` a valid pointer.
 */
enum StrataStatus strata_tree_parse(const char *json, struct StrataTree **out);

/**
 * # Safety
 * `tree` must come from `strata_tree_parse`/`strata_tree_stabilize` and
 * not have been freed.
 */
void strata_tree_free(struct StrataTree *tree);

/**
 * # Safety
 * `tree` must be a live handle; `out` a valid pointer.
 */
enum StrataStatus strata_tree_is_stable(const struct StrataTree *tree, bool *out);

/**
 * Canonical stabilization; writes a new handle.
 *
 * # Safety
 * `tree` must be a live handle; `out` a valid pointer.
 */
enum StrataStatus strata_tree_stabilize(const struct StrataTree *tree, struct StrataTree **out);

/**
 * Complex dimension of the stratum of a stable tree.
 *
 * # Safety
 * `tree` must be a live handle; `out` a valid pointer.
 */
enum StrataStatus strata_tree_stratum_dim(const struct StrataTree *tree, int64_t *out);

/**
 * Serialize a tree back to JSON; free the string with
 * `strata_string_free`.
 *
 * # Safety
 * `tree` must be a live handle; `out` a valid pointer.
 */
enum StrataStatus strata_tree_to_json(const struct StrataTree *tree, char **out);

/**
 * Stratum class counts by edge number for `k` labels. Writes up to `len`
 * counts and the total number of edge levels to `written`.
 *
 * # Safety
 * `counts` must point to at least `len` writable entries; `written` must
 * be valid.
 */
enum StrataStatus strata_dm_strata_counts(uintptr_t k,
                                          uintptr_t *counts,
                                          uintptr_t len,
                                          uintptr_t *written);

/**
 * Real moduli dimension `2(n - 3 + k + c1 - edges) - codim`.
 */
int64_t strata_moduli_dim(int64_t n, int64_t k, int64_t c1a, int64_t edges, int64_t codim);

/**
 * Parse a curve from its JSON wire format.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string, `out` a valid pointer.
 */
enum StrataStatus strata_curve_parse(const char *json, double tol, struct StrataCurve **out);

/**
 * # Safety
 * `curve` must come from `strata_curve_parse` and not have been freed.
 */
void strata_curve_free(struct StrataCurve *curve);

/**
 * Cross ratio of four sphere points given as projective pairs
 * `[a_re, a_im, b_re, b_im]` each; the result uses the same encoding.
 *
 * # Safety
 * `points` must hold 16 doubles, `out` 4 writable doubles.
 */
enum StrataStatus strata_cross_ratio(const double *points, double *out);

/**
 * Cross ratio `w_{i,j,m,n}` on a nodal curve, projective output.
 *
 * # Safety
 * `curve` must be a live handle, `out` 4 writable doubles.
 */
enum StrataStatus strata_curve_cross_ratio(const struct StrataCurve *curve,
                                           uint32_t i,
                                           uint32_t j,
                                           uint32_t m,
                                           uint32_t n,
                                           double *out);

/**
 * Kähler angle of the oriented subspace spanned by the columns of a
 * row-major `rows x cols` basis matrix.
 *
 * # Safety
 * `basis` must hold `rows * cols` doubles; `out` must be valid.
 */
enum StrataStatus strata_kahler_angle(uintptr_t rows,
                                      uintptr_t cols,
                                      const double *basis,
                                      double *out);

/**
 * Maximal (`which = 0`) or minimal (`which = 1`) angle between the
 * subspaces spanned by two column bases over the same ambient space.
 *
 * # Safety
 * Matrix buffers must match their stated dimensions; `out` valid.
 */
enum StrataStatus strata_subspace_angle(uint32_t which,
                                        uintptr_t rows,
                                        uintptr_t x_cols,
                                        const double *x,
                                        uintptr_t y_cols,
                                        const double *y,
                                        double *out);

/**
 * Taming margins of a skew form given as a row-major `dim x dim` matrix.
 *
 * # Safety
 * `sigma` must hold `dim * dim` doubles; outputs must be valid.
 */
enum StrataStatus strata_taming_margin(uintptr_t dim,
                                       const double *sigma,
                                       double *alpha,
                                       double *beta,
                                       double *gamma);

/**
 * Compatible structure preserving a codimension-2 symplectic subspace.
 * Writes the `2n x 2n` matrix row-major into `k_out` and the distance to
 * the standard structure over the invariant subspaces into `norm_out`.
 *
 * # Safety
 * `basis` must hold `(2n) * (2n-2)` doubles, `k_out` `(2n)^2` writable
 * doubles; `norm_out` valid.
 */
enum StrataStatus strata_construct_k_codim2(uintptr_t n,
                                            const double *basis,
                                            double *k_out,
                                            double *norm_out);

/**
 * Chern bound `D_* = (1 + theta)/(1 - theta) |alpha|` as an exact
 * rational.
 *
 * # Safety
 * Output pointers must be valid.
 */
enum StrataStatus strata_d_star(int64_t theta_num,
                                int64_t theta_den,
                                int64_t alpha_num,
                                int64_t alpha_den,
                                int64_t *out_num,
                                int64_t *out_den);

/**
 * Degree threshold `D^* = 2(D_* + n)` as an exact rational.
 *
 * # Safety
 * Output pointers must be valid.
 */
enum StrataStatus strata_degree_threshold(int64_t n,
                                          int64_t theta_num,
                                          int64_t theta_den,
                                          int64_t alpha_num,
                                          int64_t alpha_den,
                                          int64_t *out_num,
                                          int64_t *out_den);

/**
 * Verdict for one degree: sphere-in-hypersurface index sign and the
 * three-intersection-point flag.
 *
 * # Safety
 * Output pointers must be valid.
 */
enum StrataStatus strata_degree_verdict(int64_t n,
                                        int64_t c1a,
                                        int64_t degree,
                                        int64_t omega_a,
                                        int64_t theta_num,
                                        int64_t theta_den,
                                        int64_t alpha_num,
                                        int64_t alpha_den,
                                        bool *index_negative,
                                        bool *forces_three_points);

/**
 * Counting weight `1/(l0! l1!)` (as numerator/denominator when they fit
 * in 64 bits) and the covering degree `l1!`.
 *
 * # Safety
 * Output pointers must be valid.
 */
enum StrataStatus strata_gw_normalization(uint64_t ell0,
                                          uint64_t ell1,
                                          int64_t *weight_num,
                                          int64_t *weight_den,
                                          uint64_t *covering);

/**
 * Vanishing order of a polynomial at a point. Coefficients are ascending
 * `[re, im]` pairs converted exactly; returns `MathError` for the zero
 * polynomial.
 *
 * # Safety
 * `coeffs` must hold `2 * len` doubles; `out` must be valid.
 */
enum StrataStatus strata_vanishing_order(const double *coeffs,
                                         uintptr_t len,
                                         double z0_re,
                                         double z0_im,
                                         uint64_t *out);

/**
 * Winding number of a polynomial around a circle.
 *
 * # Safety
 * `coeffs` must hold `2 * len` doubles; `out` must be valid.
 */
enum StrataStatus strata_winding_number(const double *coeffs,
                                        uintptr_t len,
                                        double center_re,
                                        double center_im,
                                        double radius,
                                        int64_t *out);

/**
 * Run a named verification suite; the JSON report is written to
 * `report_out` (free with `strata_string_free`). Returns
 * `PropertyViolation` when the suite ran but found violations.
 *
 * # Safety
 * `name` must be a valid NUL-terminated string; `report_out` valid.
 */
enum StrataStatus strata_verify_suite(const char *name,
                                      uint64_t seed,
                                      bool quick,
                                      char **report_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STRATA_H */
