/* C interface to the balescu library. Every function returns a status code
 * (BALESCU_OK on success); on failure balescu_last_error() describes the
 * problem for the calling thread. Handles are opaque and owned by the
 * caller; destroy functions accept NULL. */
#ifndef BALESCU_H
#define BALESCU_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum balescu_status {
  BALESCU_OK = 0,
  BALESCU_ERR_DOMAIN = 1,
  BALESCU_ERR_OVERFLOW_GUARD = 2,
  BALESCU_ERR_TOLERANCE = 3,
  BALESCU_ERR_SINGULARITY = 4,
  BALESCU_ERR_BUDGET = 5,
  BALESCU_ERR_INPUT = 6,
  BALESCU_ERR_STEP_SIZE = 7,
  BALESCU_ERR_IO = 8,
  BALESCU_ERR_INTERNAL = 9,
  BALESCU_ERR_NULL_ARGUMENT = 10
};

typedef struct balescu_context balescu_context;
typedef struct balescu_radial balescu_radial;
typedef struct balescu_evolution balescu_evolution;
typedef struct balescu_report balescu_report;

const char* balescu_last_error(void);
const char* balescu_status_name(int status);
void balescu_string_free(char* s);

/* Context: cut-off k0, the kernel weight table and the collision frequency
 * tables (built on creation). */
int balescu_context_create(double k0, balescu_context** out);
void balescu_context_destroy(balescu_context* ctx);

int balescu_weight_validate(double ell, double theta, double q);

/* Dispersion and J. */
int balescu_psi(const balescu_context* ctx, double x, double* re, double* im);
int balescu_epsilon(const balescu_context* ctx, double k_mag, double x, double* re, double* im);
int balescu_jay(const balescu_context* ctx, double x, double* out);
int balescu_jay_scaled(const balescu_context* ctx, double x, double* out);
int balescu_jay_oracle(const balescu_context* ctx, double x, double* out);

/* Collision frequency eigenvalues; the derivatives need r > 0. */
int balescu_lambda(const balescu_context* ctx, double r, double* lambda1, double* lambda2);
int balescu_lambda_derivatives(const balescu_context* ctx, double r, double* dlambda1, double* dlambda2);
int balescu_lambda2_constant(const balescu_context* ctx, double* out);

/* 3x3 matrices are row-major. b_scaled may be NULL. */
int balescu_kernel_B(const balescu_context* ctx, const double v[3], const double vstar[3], double b[9],
                     double b_scaled[9], double* v_R_mag);
int balescu_landau_kernel(const double v[3], const double vstar[3], double L_const, double out[9]);

/* Radial operator on M cells of [0, r_max]. */
int balescu_radial_create(const balescu_context* ctx, int M, double r_max, balescu_radial** out);
void balescu_radial_destroy(balescu_radial* op);
int balescu_radial_stable_dt(const balescu_radial* op, double* out);

struct balescu_evolution_summary {
  double fitted_p;
  double fitted_rate;
  double theta_ratio;
  double max_mass_drift;
  double max_energy_drift;
  int l2_monotone;
  int weighted_monotone;
  int steps;
  double dt;
};

/* dt <= 0 selects the stability bound. preset: gaussian_bump, shell, hermite_mode. */
int balescu_evolve(const balescu_radial* op, const char* preset, double ell, double theta, double q,
                   double dt, double t_end, balescu_evolution** out);
void balescu_evolution_destroy(balescu_evolution* ev);
int balescu_evolution_size(const balescu_evolution* ev, size_t* n);
int balescu_evolution_sample(const balescu_evolution* ev, size_t i, double* t, double* mass, double* energy,
                             double* l2, double* weighted, double* sigma_norm);
int balescu_evolution_get_summary(const balescu_evolution* ev, struct balescu_evolution_summary* out);

struct balescu_verify_config {
  double k0;
  int M;
  double r_max;
  int n3d;
  uint64_t seed;
  double t_end;
  double dt; /* <= 0: stability bound */
  double tol_scale;
  int probes;
};

void balescu_verify_config_default(struct balescu_verify_config* cfg);

/* suites: comma-separated subset of dispersion,kernel,frequency,operator; NULL or "" for all. */
int balescu_verify_run(const struct balescu_verify_config* cfg, const char* suites, balescu_report** out);
void balescu_report_destroy(balescu_report* rep);
int balescu_report_all_pass(const balescu_report* rep, int* all_pass);
int balescu_report_size(const balescu_report* rep, size_t* n);
/* name stays valid while the report lives. */
int balescu_report_check(const balescu_report* rep, size_t i, const char** name, double* target, double* achieved,
                         double* tolerance, int* pass, double* runtime_s);
int balescu_report_extra_size(const balescu_report* rep, size_t* n);
int balescu_report_extra(const balescu_report* rep, size_t i, const char** name, double* value);
/* Serialized report; free with balescu_string_free. */
int balescu_report_json(const balescu_report* rep, char** out);
int balescu_report_csv(const balescu_report* rep, char** out);
int balescu_manifest_json(const struct balescu_verify_config* cfg, char** out);

#ifdef __cplusplus
}
#endif

#endif
