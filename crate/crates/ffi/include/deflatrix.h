#ifndef DEFLATRIX_H
#define DEFLATRIX_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum DfxStatus {
  DFX_STATUS_OK = 0,
  DFX_STATUS_NULL_POINTER = 1,
  DFX_STATUS_INVALID_ARGUMENT = 2,
  DFX_STATUS_DIMENSION_MISMATCH = 3,
  DFX_STATUS_NOT_SYMMETRIC = 4,
  DFX_STATUS_NOT_UNIT = 5,
  DFX_STATUS_DEGENERATE_ITERATE = 6,
  DFX_STATUS_INVALID_SPECTRUM = 7,
  DFX_STATUS_DEGENERATE_GAP = 8,
  DFX_STATUS_NO_CONVERGENCE = 9,
  DFX_STATUS_ISOLATED_NODE = 10,
  DFX_STATUS_INVARIANT = 11,
  DFX_STATUS_PARSE = 12,
  DFX_STATUS_IO = 13,
  DFX_STATUS_PANIC = 14,
} DfxStatus;

/**
 * Symmetric matrix handle.
 */
typedef struct DfxMatrix DfxMatrix;

/**
 * Finished deflation run handle.
 */
typedef struct DfxRun DfxRun;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *dfx_last_error(void);

/**
 * Static, nul-terminated crate version.
 */
const char *dfx_version(void);

/**
 * Builds a `dim × dim` symmetric matrix from `dim * dim` row-major values.
 * Fails with `NotSymmetric` unless the input is symmetric to round-off.
 *
 * # Safety
 * `data` must point to `dim * dim` readable doubles and `out` must be writable.
 */
enum DfxStatus dfx_matrix_new(size_t dim, const double *data, struct DfxMatrix **out);

/**
 * Releases a matrix. Null is ignored.
 *
 * # Safety
 * `m` must be null or a handle from [`dfx_matrix_new`] not yet freed.
 */
void dfx_matrix_free(struct DfxMatrix *m);

/**
 * Dimension of `m`, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live matrix handle.
 */
size_t dfx_matrix_dim(const struct DfxMatrix *m);

/**
 * Runs exactly `t` power-iteration steps from the unit vector `x0` and writes
 * the final unit iterate to `x_out`. Both buffers hold `dim` doubles.
 *
 * # Safety
 * `m` must be a live matrix handle; `x0` and `x_out` must each hold `dim` doubles.
 */
enum DfxStatus dfx_power_iterate(const struct DfxMatrix *m,
                                 const double *x0,
                                 size_t t,
                                 double *x_out,
                                 size_t dim);

/**
 * Deflates `m` for `k_count` steps, each using `t` power-iteration steps from
 * a start drawn from `seed`. The reference spectrum comes from the Jacobi
 * eigendecomposition of `m`.
 *
 * # Safety
 * `m` must be a live matrix handle and `out` must be writable.
 */
enum DfxStatus dfx_deflate(const struct DfxMatrix *m,
                           size_t k_count,
                           size_t t,
                           uint64_t seed,
                           struct DfxRun **out);

/**
 * Builds a random `d × d` test matrix with eigenvalues `j^(-gamma)` and
 * deflates it, exactly as the `deflate` command does.
 *
 * # Safety
 * `out` must be writable.
 */
enum DfxStatus dfx_simulate_power_law(size_t d,
                                      double gamma,
                                      size_t k_count,
                                      size_t t,
                                      uint64_t seed,
                                      struct DfxRun **out);

/**
 * Releases a run. Null is ignored.
 *
 * # Safety
 * `r` must be null or a run handle not yet freed.
 */
void dfx_run_free(struct DfxRun *r);

/**
 * Number of deflation steps in `r`, or 0 for a null handle.
 *
 * # Safety
 * `r` must be null or a live run handle.
 */
size_t dfx_run_steps(const struct DfxRun *r);

/**
 * Dimension of the deflated matrix, or 0 for a null handle.
 *
 * # Safety
 * `r` must be null or a live run handle.
 */
size_t dfx_run_dim(const struct DfxRun *r);

/**
 * Copies the step-`k` eigenvector estimate (1-based `k`) into `v_out`.
 *
 * # Safety
 * `r` must be a live run handle and `v_out` must hold `dim` doubles.
 */
enum DfxStatus dfx_run_vector(const struct DfxRun *r, size_t k, double *v_out, size_t dim);

/**
 * Step-`k` eigenvalue estimate `v_kᵀ Σ_k v_k`.
 *
 * # Safety
 * `r` must be a live run handle and `value` writable.
 */
enum DfxStatus dfx_run_eigenvalue(const struct DfxRun *r, size_t k, double *value);

/**
 * Step-`k` subroutine error `‖v_k − u_k‖` against the top eigenvector of the
 * current deflated matrix.
 *
 * # Safety
 * `r` must be a live run handle and `value` writable.
 */
enum DfxStatus dfx_run_subroutine_error(const struct DfxRun *r, size_t k, double *value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DEFLATRIX_H */
