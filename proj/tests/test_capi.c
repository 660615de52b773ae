/* Plain C client of the library interface. */
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "balescu/balescu.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

int main(void) {
  balescu_context* ctx = NULL;
  EXPECT(balescu_context_create(-1.0, &ctx) == BALESCU_ERR_DOMAIN);
  EXPECT(ctx == NULL);
  EXPECT(strlen(balescu_last_error()) > 0);
  EXPECT(balescu_context_create(1.0, &ctx) == BALESCU_OK);

  double re = 0, im = 0, v = 0;
  EXPECT(balescu_psi(ctx, 0.0, &re, &im) == BALESCU_OK && re == 1.0 && im == 0.0);
  EXPECT(balescu_epsilon(ctx, 0.0, 1.0, &re, &im) == BALESCU_ERR_DOMAIN);
  EXPECT(balescu_jay(ctx, 0.0, &v) == BALESCU_OK && fabs(v - (2.0 * log(2.0) - 1.0)) < 1e-14);
  EXPECT(balescu_jay(ctx, 30.0, &v) == BALESCU_ERR_OVERFLOW_GUARD);
  EXPECT(strcmp(balescu_status_name(BALESCU_ERR_OVERFLOW_GUARD), "overflow_guard") == 0);
  EXPECT(balescu_jay_scaled(ctx, 30.0, &v) == BALESCU_OK && v > 0.0);
  EXPECT(balescu_jay(NULL, 0.0, &v) == BALESCU_ERR_NULL_ARGUMENT);

  double l1 = 0, l2 = 0;
  EXPECT(balescu_lambda(ctx, 0.0, &l1, &l2) == BALESCU_OK && l1 == l2 && fabs(l1 - 0.16138) < 1e-5);
  EXPECT(balescu_lambda_derivatives(ctx, 0.0, &l1, &l2) == BALESCU_ERR_DOMAIN);

  const double a[3] = {1, 0, 0}, b[3] = {-1, 0, 0};
  double B[9], Bs[9], L[9], vr = -1;
  EXPECT(balescu_kernel_B(ctx, a, b, B, Bs, &vr) == BALESCU_OK);
  EXPECT(vr == 0.0 && fabs(B[0]) < 1e-12 && fabs(B[4] - 0.15169744087717638) < 1e-6 && B[4] == B[8]);
  EXPECT(balescu_kernel_B(ctx, a, a, B, NULL, NULL) == BALESCU_ERR_SINGULARITY);
  EXPECT(balescu_landau_kernel(a, b, 2.0, L) == BALESCU_OK && fabs(L[4] - 1.0) < 1e-15);
  EXPECT(balescu_weight_validate(0.0, 2.0, 1.0) == BALESCU_ERR_DOMAIN);
  EXPECT(balescu_weight_validate(0.0, 2.0, 0.5) == BALESCU_OK);

  balescu_radial* op = NULL;
  EXPECT(balescu_radial_create(ctx, 4, 8.0, &op) == BALESCU_ERR_DOMAIN);
  EXPECT(balescu_radial_create(ctx, 80, 8.0, &op) == BALESCU_OK);
  double dt = 0;
  EXPECT(balescu_radial_stable_dt(op, &dt) == BALESCU_OK && dt > 0.0);
  balescu_evolution* ev = NULL;
  EXPECT(balescu_evolve(op, "shell", 0.0, 1.0, 1.0, 10.0 * dt, 1.0, &ev) == BALESCU_ERR_STEP_SIZE);
  EXPECT(balescu_evolve(op, "nope", 0.0, 1.0, 1.0, 0.0, 1.0, &ev) == BALESCU_ERR_INPUT);
  EXPECT(balescu_evolve(op, "shell", 0.0, 1.0, 1.0, 0.0, 1.0, &ev) == BALESCU_OK);
  size_t n = 0;
  EXPECT(balescu_evolution_size(ev, &n) == BALESCU_OK && n > 2);
  double t, mass, energy, l2n, w, sn, prev = INFINITY;
  for (size_t i = 0; i < n; ++i) {
    EXPECT(balescu_evolution_sample(ev, i, &t, &mass, &energy, &l2n, &w, &sn) == BALESCU_OK);
    EXPECT(l2n < prev);
    prev = l2n;
  }
  EXPECT(balescu_evolution_sample(ev, n, &t, &mass, &energy, &l2n, &w, &sn) == BALESCU_ERR_INPUT);
  struct balescu_evolution_summary s;
  EXPECT(balescu_evolution_get_summary(ev, &s) == BALESCU_OK && s.l2_monotone == 1 && s.theta_ratio == 0.5);
  balescu_evolution_destroy(ev);
  balescu_radial_destroy(op);

  struct balescu_verify_config cfg;
  balescu_verify_config_default(&cfg);
  balescu_report* rep = NULL;
  EXPECT(balescu_verify_run(&cfg, "dispersion", &rep) == BALESCU_OK);
  int all = 0;
  EXPECT(balescu_report_all_pass(rep, &all) == BALESCU_OK && all == 1);
  size_t nc = 0;
  EXPECT(balescu_report_size(rep, &nc) == BALESCU_OK && nc == 4);
  const char* name = NULL;
  double tg, ach, tol, rt;
  int pass;
  EXPECT(balescu_report_check(rep, 0, &name, &tg, &ach, &tol, &pass, &rt) == BALESCU_OK && name && pass == 1);
  char* text = NULL;
  EXPECT(balescu_report_json(rep, &text) == BALESCU_OK && text[0] == '[');
  balescu_string_free(text);
  EXPECT(balescu_report_csv(rep, &text) == BALESCU_OK && strncmp(text, "name,target,achieved", 20) == 0);
  balescu_string_free(text);
  EXPECT(balescu_manifest_json(&cfg, &text) == BALESCU_OK && strstr(text, "sqrt_8pi") != NULL);
  balescu_string_free(text);
  balescu_report_destroy(rep);
  EXPECT(balescu_verify_run(&cfg, "bogus", &rep) == BALESCU_ERR_INPUT);

  balescu_context_destroy(ctx);
  balescu_context_destroy(NULL);
  if (failures) fprintf(stderr, "%d failures\n", failures);
  else printf("C API: all checks passed\n");
  return failures ? 1 : 0;
}
