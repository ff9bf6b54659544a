#ifndef FPDIFF_H
#define FPDIFF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FpMode {
  FP_MODE_FULL_RANGE = 0,
  FP_MODE_HALF_RANGE = 1,
} FpMode;

// Result of every call.
typedef enum FpStatus {
  FP_STATUS_OK = 0,
  FP_STATUS_NULL_POINTER = 1,
  FP_STATUS_INVALID_ARGUMENT = 2,
  FP_STATUS_CONSTRUCTION_FAILED = 3,
  FP_STATUS_LENGTH_MISMATCH = 4,
  FP_STATUS_PANIC = 5,
} FpStatus;

// Surrogate diffusivity values at the points.
typedef struct FpAlpha FpAlpha;

// Nodes, points and optional weights.
typedef struct FpMesh FpMesh;

// Tridiagonal discrete operator.
typedef struct FpOperator FpOperator;

// Gauss-Legendre rule.
typedef struct FpRule FpRule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Describes the last failure on this thread; empty after a success.
// Copies at most `len - 1` bytes plus a terminating NUL into `buf` and
// returns the full message length (excluding the NUL), so a caller can
// size a buffer by first passing `len = 0`.
//
// # Safety
// `buf` must be null or valid for `len` bytes.
size_t fp_last_error_message(char *buf, size_t len);

// Static description of a status code.
const char *fp_status_name(enum FpStatus status);

// Gauss-Legendre rule with `n` nodes (full range) or `n` nodes per half
// (half range, 2n in total).
//
// # Safety
// `out` must be valid for writing one pointer.
enum FpStatus fp_rule_new(size_t n, enum FpMode mode, struct FpRule **out);

// # Safety
// `r` must be a live rule handle; `out` valid for writing.
enum FpStatus fp_rule_len(const struct FpRule *r, size_t *out);

// # Safety
// `r` must be a live rule handle; `buf` valid for `len` doubles.
enum FpStatus fp_rule_nodes(const struct FpRule *r, double *buf, size_t len);

// # Safety
// `r` must be a live rule handle; `buf` valid for `len` doubles.
enum FpStatus fp_rule_weights(const struct FpRule *r, double *buf, size_t len);

// # Safety
// `r` must be null or a handle not yet freed.
void fp_rule_free(struct FpRule *r);

// Mesh with points at the midpoints between nodes.
//
// # Safety
// `r` must be a live rule handle; `out` valid for writing.
enum FpStatus fp_mesh_lee(const struct FpRule *r, struct FpMesh **out);

// Mesh whose cells have the quadrature weights as widths.
//
// # Safety
// `r` must be a live rule handle; `out` valid for writing.
enum FpStatus fp_mesh_haldy_ligou(const struct FpRule *r, struct FpMesh **out);

// # Safety
// `out` must be valid for writing.
enum FpStatus fp_mesh_uniform(size_t n, struct FpMesh **out);

// # Safety
// `out` must be valid for writing.
enum FpStatus fp_mesh_shifted_uniform(size_t n, struct FpMesh **out);

// Number of nodes N; points have N + 1 entries.
//
// # Safety
// `m` must be a live mesh handle; `out` valid for writing.
enum FpStatus fp_mesh_len(const struct FpMesh *m, size_t *out);

// # Safety
// `m` must be a live mesh handle; `buf` valid for `len` doubles.
enum FpStatus fp_mesh_nodes(const struct FpMesh *m, double *buf, size_t len);

// # Safety
// `m` must be a live mesh handle; `buf` valid for `len` doubles.
enum FpStatus fp_mesh_points(const struct FpMesh *m, double *buf, size_t len);

// Fails with `InvalidArgument` for the shifted uniform mesh, which has no
// weights.
//
// # Safety
// `m` must be a live mesh handle; `buf` valid for `len` doubles.
enum FpStatus fp_mesh_weights(const struct FpMesh *m, double *buf, size_t len);

// # Safety
// `m` must be null or a handle not yet freed.
void fp_mesh_free(struct FpMesh *m);

// Surrogate values from the degree-1-exact recursion, for D = 1 - mu^2.
//
// # Safety
// `m` must be a live mesh handle; `out` valid for writing.
enum FpStatus fp_alpha_morel(const struct FpMesh *m, struct FpAlpha **out);

// Surrogate values from the Runge-Kutta recursion; needs a mesh whose
// cell widths are its weights.
//
// # Safety
// `m` must be a live mesh handle; `out` valid for writing.
enum FpStatus fp_alpha_rk4(const struct FpMesh *m, struct FpAlpha **out);

// Copies the N + 1 values.
//
// # Safety
// `a` must be a live handle; `buf` valid for `len` doubles.
enum FpStatus fp_alpha_values(const struct FpAlpha *a, double *buf, size_t len);

// # Safety
// `a` must be null or a handle not yet freed.
void fp_alpha_free(struct FpAlpha *a);

// Type I operator with D = 1 - mu^2 evaluated at the points.
//
// # Safety
// `m` must be a live mesh handle; `out` valid for writing.
enum FpStatus fp_operator_type1(const struct FpMesh *m, struct FpOperator **out);

// Type II operator with surrogate values `a`.
//
// # Safety
// `m` and `a` must be live handles; `out` valid for writing.
enum FpStatus fp_operator_type2(const struct FpMesh *m,
                                const struct FpAlpha *a,
                                struct FpOperator **out);

// # Safety
// `op` must be a live handle; `out` valid for writing.
enum FpStatus fp_operator_len(const struct FpOperator *op, size_t *out);

// Copies the diagonals: `sub` and `sup` hold N - 1 values, `diag` N, and
// `len` is N.
//
// # Safety
// `op` must be a live handle; the buffers valid for the sizes above.
enum FpStatus fp_operator_diagonals(const struct FpOperator *op,
                                    double *sub,
                                    double *diag,
                                    double *sup,
                                    size_t len);

// `y = op f`, both of length `len` = N.
//
// # Safety
// `op` must be a live handle; `f` and `y` valid for `len` doubles.
enum FpStatus fp_operator_apply(const struct FpOperator *op,
                                const double *f,
                                double *y,
                                size_t len);

// # Safety
// `op` must be null or a handle not yet freed.
void fp_operator_free(struct FpOperator *op);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FPDIFF_H */
