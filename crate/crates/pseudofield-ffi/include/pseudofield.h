#ifndef PSEUDOFIELD_H
#define PSEUDOFIELD_H

/* Generated by cbindgen from the pseudofield-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of an FFI call.
 */
typedef enum {
  PF_STATUS_OK = 0,
  /**
   * The operation is undefined at the given arguments.
   */
  PF_STATUS_OUT_OF_DOMAIN = 1,
  PF_STATUS_DIVISION_BY_ZERO = 2,
  PF_STATUS_SINGULAR_DENOMINATOR = 3,
  PF_STATUS_NOT_INVERTIBLE = 4,
  /**
   * Null pointer, unknown instance name, or a buffer length mismatch.
   */
  PF_STATUS_INVALID_ARGUMENT = 5,
} PfStatus;

/**
 * Opaque instance handle.
 */
typedef struct PfInstance PfInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create an instance. `kind` is one of `affine2`, `moebius3`,
 * `semidirect`, `mikhailichenko`, `adversarial2`; `n` is the degree for
 * the parameterized families and must be 0 otherwise. Returns null on an
 * unknown name or invalid degree.
 *
 * # Safety
 * `kind` must point to a valid NUL-terminated string.
 */
PfInstance *pf_instance_new(const char *kind, size_t n);

/**
 * Release an instance created by [`pf_instance_new`]. Null is a no-op.
 *
 * # Safety
 * `inst` must be null or a pointer returned by [`pf_instance_new`] that
 * has not been freed yet.
 */
void pf_instance_free(PfInstance *inst);

/**
 * Degree n of the instance; 0 for null.
 *
 * # Safety
 * `inst` must be null or a live instance pointer.
 */
size_t pf_instance_degree(const PfInstance *inst);

/**
 * Carrier dimension of the instance; 0 for null.
 *
 * # Safety
 * `inst` must be null or a live instance pointer.
 */
size_t pf_instance_dim(const PfInstance *inst);

/**
 * Carrier multiplication `a * b`. All buffers hold `dim` values.
 *
 * # Safety
 * `inst` must be a live instance pointer; the data pointers must be valid
 * for the stated lengths, and `out` must not alias the inputs.
 */
PfStatus pf_mul(const PfInstance *inst,
                const double *a,
                size_t a_len,
                const double *b,
                size_t b_len,
                double *out,
                size_t out_len);

/**
 * Carrier inverse.
 *
 * # Safety
 * Same contract as [`pf_mul`].
 */
PfStatus pf_inv(const PfInstance *inst, const double *a, size_t a_len, double *out, size_t out_len);

/**
 * The involution `phi_i`, `2 <= i <= n`.
 *
 * # Safety
 * Same contract as [`pf_mul`].
 */
PfStatus pf_phi(const PfInstance *inst,
                size_t i,
                const double *a,
                size_t a_len,
                double *out,
                size_t out_len);

/**
 * Distinguished unit `e_i`, `1 <= i <= n`, written to `out` (`dim` values).
 *
 * # Safety
 * Same contract as [`pf_mul`].
 */
PfStatus pf_unit(const PfInstance *inst, size_t i, double *out, size_t out_len);

/**
 * The action `x . [tuple]`. `tuple` holds `n * dim` values row-major.
 *
 * # Safety
 * Same contract as [`pf_mul`].
 */
PfStatus pf_act(const PfInstance *inst,
                const double *x,
                size_t x_len,
                const double *tuple,
                size_t tuple_len,
                double *out,
                size_t out_len);

/**
 * Tuple-group product; all tuple buffers hold `n * dim` values row-major.
 *
 * # Safety
 * Same contract as [`pf_mul`].
 */
PfStatus pf_gmul(const PfInstance *inst,
                 const double *x,
                 size_t x_len,
                 const double *y,
                 size_t y_len,
                 double *out,
                 size_t out_len);

/**
 * Tuple-group left inverse.
 *
 * # Safety
 * Same contract as [`pf_mul`].
 */
PfStatus pf_ginv(const PfInstance *inst,
                 const double *x,
                 size_t x_len,
                 double *out,
                 size_t out_len);

/**
 * The neutral tuple `(e, e_2, ..., e_n)`.
 *
 * # Safety
 * Same contract as [`pf_mul`].
 */
PfStatus pf_gidentity(const PfInstance *inst, double *out, size_t out_len);

/**
 * Solve `from . Z = to` for the unique tuple `Z`.
 *
 * # Safety
 * Same contract as [`pf_mul`].
 */
PfStatus pf_solve(const PfInstance *inst,
                  const double *from,
                  size_t from_len,
                  const double *to,
                  size_t to_len,
                  double *out,
                  size_t out_len);

/**
 * Run every verification suite and hand back the JSON report as a
 * NUL-terminated string (free with [`pf_string_free`]). `out_pass` gets 1
 * when all checks passed, 0 otherwise.
 *
 * # Safety
 * `inst` must be a live instance pointer; `out_json` and `out_pass` must
 * be valid for writes.
 */
PfStatus pf_check_json(const PfInstance *inst,
                       uint64_t samples,
                       uint64_t seed,
                       double tolerance,
                       char **out_json,
                       int32_t *out_pass);

/**
 * Free a string returned by [`pf_check_json`]. Null is a no-op.
 *
 * # Safety
 * `s` must be null or a pointer produced by this library that has not
 * been freed yet.
 */
void pf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PSEUDOFIELD_H */
