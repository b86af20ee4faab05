#ifndef STRUCTEIG_H
#define STRUCTEIG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum SeStatus {
  SE_STATUS_OK = 0,
  SE_STATUS_NULL_POINTER = 1,
  SE_STATUS_INVALID_ARGUMENT = 2,
  SE_STATUS_SINGULAR = 3,
  SE_STATUS_NO_CONVERGENCE = 4,
  SE_STATUS_OUT_OF_RANGE = 5,
  SE_STATUS_UNSUPPORTED = 6,
  SE_STATUS_PANIC = 7,
} SeStatus;

/**
 * Opaque dense complex matrix.
 */
typedef struct SeMatrix SeMatrix;

/**
 * Opaque list of eigenpairs.
 */
typedef struct SeSolution SeSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL terminated,
 * truncated to `len` bytes) and returns the full message length, or 0 when
 * there is no error. Passing a null `buf` only queries the length.
 *
 * # Safety
 *
 * `buf` is null or writable for `len` bytes.
 */
size_t se_last_error_message(char *buf, size_t len);

/**
 * Toeplitz-plus-Hankel pencil (A, B) of size `n`. Bands hold `m + 1`
 * coefficients `α_0..α_m`; `*_im` may be null for real bands.
 *
 * # Safety
 *
 * Band arrays hold their stated lengths; see the crate-level pointer contract.
 */
enum SeStatus se_pencil_toeplitz_hankel(uint32_t variant_index,
                                        size_t n,
                                        const double *alpha_re,
                                        const double *alpha_im,
                                        size_t alpha_len,
                                        const double *beta_re,
                                        const double *beta_im,
                                        size_t beta_len,
                                        struct SeMatrix **out_a,
                                        struct SeMatrix **out_b);

/**
 * Stiffness and mass matrices of quadratic (`degree` 2) or cubic
 * (`degree` 3) finite elements on `n_elems` uniform elements.
 *
 * # Safety
 *
 * See the crate-level pointer contract.
 */
enum SeStatus se_pencil_fem(uint32_t degree,
                            size_t n_elems,
                            struct SeMatrix **out_k,
                            struct SeMatrix **out_m);

/**
 * Matrix from row-major real and imaginary parts (`im` may be null).
 *
 * # Safety
 *
 * `re` (and `im` when non-null) hold `rows * cols` values.
 */
enum SeStatus se_matrix_from_rows(size_t rows,
                                  size_t cols,
                                  const double *re,
                                  const double *im,
                                  struct SeMatrix **out);

/**
 * # Safety
 *
 * See the crate-level pointer contract.
 */
size_t se_matrix_rows(const struct SeMatrix *m);

/**
 * # Safety
 *
 * See the crate-level pointer contract.
 */
size_t se_matrix_cols(const struct SeMatrix *m);

/**
 * Entry `(i, j)`, zero-based.
 *
 * # Safety
 *
 * See the crate-level pointer contract.
 */
enum SeStatus se_matrix_get(const struct SeMatrix *m, size_t i, size_t j, double *re, double *im);

/**
 * # Safety
 *
 * `m` is null or a matrix handle not freed before; it is dangling afterwards.
 */
void se_matrix_free(struct SeMatrix *m);

/**
 * Closed-form eigenpairs of the Toeplitz-plus-Hankel pencil.
 *
 * # Safety
 *
 * Band arrays hold their stated lengths; see the crate-level pointer contract.
 */
enum SeStatus se_gevp_analytic(uint32_t variant_index,
                               size_t n,
                               const double *alpha_re,
                               const double *alpha_im,
                               size_t alpha_len,
                               const double *beta_re,
                               const double *beta_im,
                               size_t beta_len,
                               struct SeSolution **out);

/**
 * Closed-form eigenpairs of the finite element pencil of the given degree.
 *
 * # Safety
 *
 * See the crate-level pointer contract.
 */
enum SeStatus se_fem_analytic(uint32_t degree, size_t n_elems, struct SeSolution **out);

/**
 * Dense numerical eigenpairs of `A x = λ B x`.
 *
 * # Safety
 *
 * See the crate-level pointer contract.
 */
enum SeStatus se_gevp_numeric(const struct SeMatrix *a,
                              const struct SeMatrix *b,
                              struct SeSolution **out);

/**
 * # Safety
 *
 * See the crate-level pointer contract.
 */
size_t se_solution_len(const struct SeSolution *s);

/**
 * Length of every eigenvector in the solution.
 *
 * # Safety
 *
 * See the crate-level pointer contract.
 */
size_t se_solution_dim(const struct SeSolution *s);

/**
 * Eigenvalue and mode index of the `index`-th pair (zero-based).
 *
 * # Safety
 *
 * See the crate-level pointer contract.
 */
enum SeStatus se_solution_value(const struct SeSolution *s,
                                size_t index,
                                double *re,
                                double *im,
                                size_t *mode);

/**
 * Copies the `index`-th eigenvector into `re`/`im`, each of length `len`.
 *
 * # Safety
 *
 * `re` and `im` are writable for `len` values.
 */
enum SeStatus se_solution_vector(const struct SeSolution *s,
                                 size_t index,
                                 double *re,
                                 double *im,
                                 size_t len);

/**
 * # Safety
 *
 * `s` is null or a solution handle not freed before; it is dangling afterwards.
 */
void se_solution_free(struct SeSolution *s);

/**
 * Both sides of the eigenvector-eigenvalue identity for Hermitian `a`
 * (`j`, `k` one-based).
 *
 * # Safety
 *
 * See the crate-level pointer contract.
 */
enum SeStatus se_eve_identity(const struct SeMatrix *a,
                              size_t j,
                              size_t k,
                              double *lhs,
                              double *rhs);

/**
 * Both sides of the trigonometric identity with a row removed
 * (`l` in 1..=n; `l == 1` is the first-row special case).
 *
 * # Safety
 *
 * See the crate-level pointer contract.
 */
enum SeStatus se_trig_identity(size_t n, size_t k, size_t l, double *lhs, double *rhs);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STRUCTEIG_H */
