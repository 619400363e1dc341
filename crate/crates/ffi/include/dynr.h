#ifndef DYNR_H
#define DYNR_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum DynrStatus {
  DYNR_STATUS_OK = 0,
  DYNR_STATUS_NULL_POINTER = 1,
  DYNR_STATUS_INVALID_UTF8 = 2,
  DYNR_STATUS_PARSE = 3,
  DYNR_STATUS_UNKNOWN_ALGEBRA = 4,
  DYNR_STATUS_DIMENSION = 5,
  DYNR_STATUS_SINGULAR_FORM = 6,
  DYNR_STATUS_DOMAIN = 7,
  DYNR_STATUS_POLE = 8,
  DYNR_STATUS_SPECTRAL = 9,
  DYNR_STATUS_NUMERICAL = 10,
  DYNR_STATUS_USAGE = 11,
  DYNR_STATUS_PANIC = 12,
} DynrStatus;

/**
 * Back-end for the r-matrix.
 */
typedef enum DynrMethod {
  DYNR_METHOD_SPECTRAL = 0,
  DYNR_METHOD_CONTOUR = 1,
  DYNR_METHOD_TAYLOR = 2,
} DynrMethod;

/**
 * Opaque algebra handle.
 */
typedef struct DynrAlgebra DynrAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string. Do not free.
 */
const char *dynr_version(void);

/**
 * Message for the last failing call on this thread, or null.
 * Valid until the next failing call on the same thread.
 */
const char *dynr_last_error(void);

/**
 * Builds a catalog algebra such as `sl2`, `abelian(3)` or `direct_sum(sl2,sl2)`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DynrStatus dynr_algebra_catalog(const char *name, struct DynrAlgebra **out);

/**
 * Parses an algebra from the text file format.
 *
 * # Safety
 * `name` and `text` must be NUL-terminated strings and `out` a valid pointer.
 */
enum DynrStatus dynr_algebra_parse(const char *name, const char *text, struct DynrAlgebra **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `a` must come from this library and must not be used afterwards.
 */
void dynr_algebra_free(struct DynrAlgebra *a);

/**
 * Dimension of the algebra, 0 for a null handle.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
size_t dynr_algebra_dim(const struct DynrAlgebra *a);

/**
 * Checks antisymmetry, Jacobi, invariance and nondegeneracy.
 *
 * # Safety
 * `a` must be a live handle and `pass` a valid pointer.
 */
enum DynrStatus dynr_algebra_validate(const struct DynrAlgebra *a, bool *pass);

/**
 * `f(z) = coth(z/2)/2 - 1/z`.
 *
 * # Safety
 * `out_re` and `out_im` must be valid pointers.
 */
enum DynrStatus dynr_f_eval(double re, double im, double *out_re, double *out_im);

/**
 * Whether no eigenvalue of `ad w` is near `2πiZ*`.
 *
 * # Safety
 * `a` must be a live handle, `omega_re` must hold `len` values, `omega_im`
 * must be null or hold `len` values, and `ok` must be valid.
 */
enum DynrStatus dynr_domain_check(const struct DynrAlgebra *a,
                                  const double *omega_re,
                                  const double *omega_im,
                                  size_t len,
                                  bool *ok);

/**
 * Writes the matrix of `R(w)` in row-major order.
 *
 * # Safety
 * As for `dynr_domain_check`; `out_re` and `out_im` must each hold `len * len` values.
 */
enum DynrStatus dynr_r_matrix(const struct DynrAlgebra *a,
                              const double *omega_re,
                              const double *omega_im,
                              size_t len,
                              enum DynrMethod method,
                              double *out_re,
                              double *out_im);

/**
 * Largest Yang-Baxter residual over all basis pairs.
 *
 * # Safety
 * As for `dynr_domain_check`; `residual` must be valid.
 */
enum DynrStatus dynr_cdybe_residual(const struct DynrAlgebra *a,
                                    const double *omega_re,
                                    const double *omega_im,
                                    size_t len,
                                    enum DynrMethod method,
                                    double *residual);

/**
 * Runs the verification suites described by a JSON run configuration and
 * returns the JSON report. Missing fields take their defaults. `pass` receives
 * the overall verdict. Free the report with `dynr_string_free`.
 *
 * # Safety
 * `config_json` must be a NUL-terminated string; `report` and `pass` valid pointers.
 */
enum DynrStatus dynr_verify_json(const char *config_json, char **report, bool *pass);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void dynr_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DYNR_H */
