#include <math.h>
#include <stdio.h>
#include "fpdiff.h"

#define CHECK(call)                                                        \
  do {                                                                     \
    FpStatus s_ = (call);                                                  \
    if (s_ != FP_STATUS_OK) {                                              \
      char msg_[256];                                                      \
      fp_last_error_message(msg_, sizeof msg_);                            \
      fprintf(stderr, "%s: %s (%s)\n", #call, fp_status_name(s_), msg_);   \
      return 1;                                                            \
    }                                                                      \
  } while (0)

int main(void) {
  enum { N = 100 };
  FpRule *rule = NULL;
  FpMesh *mesh = NULL;
  FpAlpha *alpha = NULL;
  FpOperator *op = NULL;
  double x[N], f[N], y[N];
  size_t n = 0;

  CHECK(fp_rule_new(N, FP_MODE_FULL_RANGE, &rule));
  CHECK(fp_mesh_haldy_ligou(rule, &mesh));
  CHECK(fp_alpha_morel(mesh, &alpha));
  CHECK(fp_operator_type2(mesh, alpha, &op));
  CHECK(fp_operator_len(op, &n));
  CHECK(fp_mesh_nodes(mesh, x, N));
  for (int i = 0; i < N; i++) f[i] = exp(x[i]);
  CHECK(fp_operator_apply(op, f, y, N));

  double err = 0.0;
  for (int i = 0; i < N; i++) {
    double exact = exp(x[i]) * (1.0 - 2.0 * x[i] - x[i] * x[i]);
    double e = fabs(exact - y[i]);
    if (e > err) err = e;
  }
  printf("n=%zu E=%.3e\n", n, err);

  if (fp_mesh_nodes(mesh, x, N - 1) != FP_STATUS_LENGTH_MISMATCH) return 2;
  if (fp_rule_new(0, FP_MODE_FULL_RANGE, &rule) != FP_STATUS_INVALID_ARGUMENT) return 3;

  fp_operator_free(op);
  fp_alpha_free(alpha);
  fp_mesh_free(mesh);
  fp_rule_free(rule);
  return 0;
}
