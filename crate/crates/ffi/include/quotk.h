#ifndef QUOTK_H
#define QUOTK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QuotkFamily {
  QUOTK_FAMILY_K_THEORY = 0,
  QUOTK_FAMILY_VERLINDE = 1,
  QUOTK_FAMILY_SEGRE = 2,
} QuotkFamily;

// How `beta` splits into `N` parts.
typedef enum QuotkShape {
  QUOTK_SHAPE_ZERO = 0,
  // One part carries `beta`.
  QUOTK_SHAPE_SINGLE = 1,
  // `N` equal parts with pairwise product `beta_pair`.
  QUOTK_SHAPE_UNIFORM = 2,
} QuotkShape;

// Result code of every call.
typedef enum QuotkStatus {
  QUOTK_STATUS_OK = 0,
  QUOTK_STATUS_NULL_POINTER = 1,
  // Malformed arguments, unsupported genus or pattern, or a too small jet cap.
  QUOTK_STATUS_INVALID_INPUT = 2,
  // The numerical data violates a hypothesis of the formula being evaluated.
  QUOTK_STATUS_HYPOTHESIS = 3,
  // The engine failed while computing (non-invertible series, resultant, ...).
  QUOTK_STATUS_COMPUTATION = 4,
  // No rational function within the requested degree bounds fits the series.
  QUOTK_STATUS_NO_FIT = 5,
  // An index outside the exact window, or a coefficient that overflows `int64_t`.
  QUOTK_STATUS_OUT_OF_RANGE = 6,
  QUOTK_STATUS_PANIC = 7,
} QuotkStatus;

// `q^shift num(q) / den(q)` with `den(0) = 1`.
typedef struct QuotkRational QuotkRational;

// A truncated Laurent series with rational coefficients.
typedef struct QuotkSeries QuotkSeries;

// One class `alpha` of rank `rank`; `k` is the exterior power for the K-theoretic family.
typedef struct QuotkInput {
  enum QuotkFamily family;
  uintptr_t n;
  int64_t rank;
  uint32_t k;
  int64_t k2;
  int64_t chi;
  int64_t c1k;
  enum QuotkShape shape;
  int64_t sw;
  int64_t beta_k;
  int64_t beta_c1;
  int64_t beta_pair;
  int64_t trunc;
} QuotkInput;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Generating series of the invariant described by `input` up to `O(q^trunc)`.
//
// # Safety
// `input` must point to a valid `QuotkInput` and `out` to writable storage.
enum QuotkStatus quotk_compute(const struct QuotkInput *input, struct QuotkSeries **out);

// True when the run tests an instance of a statement that is not proven in general.
//
// # Safety
// `input` must be null or point to a valid `QuotkInput`.
bool quotk_input_is_conjectural(const struct QuotkInput *input);

// Rank-one generating series for `chi(O_S)` in `{0, 1}`.
//
// # Safety
// `out` must point to writable storage.
enum QuotkStatus quotk_rank1(int64_t chi, int64_t k2, int64_t trunc, struct QuotkSeries **out);

// Builds a series `sum_i (num[i]/den[i]) q^(valuation + i) + O(q^(valuation + len))`.
// `den` may be null for integer coefficients.
//
// # Safety
// `num` (and `den` when not null) must point to `len` readable values.
enum QuotkStatus quotk_series_new(const int64_t *num,
                                  const int64_t *den,
                                  uintptr_t len,
                                  int64_t valuation,
                                  struct QuotkSeries **out);

// # Safety
// `s` must be null or a handle from this library that was not yet freed.
void quotk_series_free(struct QuotkSeries *s);

// First exponent of the stored window and the exclusive precision bound `T` of `O(q^T)`.
//
// # Safety
// `s` must be a live handle; `valuation` and `trunc` must be writable.
enum QuotkStatus quotk_series_window(const struct QuotkSeries *s,
                                     int64_t *valuation,
                                     int64_t *trunc);

// Coefficient of `q^power`; zero below the valuation, out of range at or past `trunc`.
//
// # Safety
// `s` must be a live handle; `num` and `den` must be writable.
enum QuotkStatus quotk_series_coeff(const struct QuotkSeries *s,
                                    int64_t power,
                                    int64_t *num,
                                    int64_t *den);

// Smallest rational function with `deg num <= deg_num`, `deg den <= deg_den` that
// reproduces every coefficient, with five surplus coefficients as a check.
//
// # Safety
// `s` must be a live handle and `out` writable.
enum QuotkStatus quotk_fit(const struct QuotkSeries *s,
                           uintptr_t deg_num,
                           uintptr_t deg_den,
                           struct QuotkRational **out);

// # Safety
// `r` must be null or a handle from this library that was not yet freed.
void quotk_rational_free(struct QuotkRational *r);

// Shift and degrees of numerator and denominator; the zero numerator has degree 0.
//
// # Safety
// `r` must be a live handle; the out pointers must be writable.
enum QuotkStatus quotk_rational_shape(const struct QuotkRational *r,
                                      int64_t *shift,
                                      uintptr_t *deg_num,
                                      uintptr_t *deg_den);

// Coefficient of `q^i` in the numerator (`which_den = false`) or denominator.
//
// # Safety
// `r` must be a live handle; `num` and `den` must be writable.
enum QuotkStatus quotk_rational_coeff(const struct QuotkRational *r,
                                      bool which_den,
                                      uintptr_t i,
                                      int64_t *num,
                                      int64_t *den);

// Order of the pole at `q = 1`, and whether it is the only pole.
//
// # Safety
// `r` must be a live handle; the out pointers must be writable.
enum QuotkStatus quotk_rational_pole_at_one(const struct QuotkRational *r,
                                            uintptr_t *order,
                                            bool *only_pole);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUOTK_H */
