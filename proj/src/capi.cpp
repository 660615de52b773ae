#include "balescu/balescu.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "balescu/dispersion.hpp"
#include "balescu/error.hpp"
#include "balescu/frequency.hpp"
#include "balescu/kernel.hpp"
#include "balescu/radial.hpp"
#include "balescu/verify.hpp"

using namespace balescu;

struct balescu_context {
  PlasmaConfig cfg;
  std::unique_ptr<KernelEvaluator> kernel;
  std::unique_ptr<CollisionFrequency> freq;
};

struct balescu_radial {
  std::unique_ptr<RadialOperator> op;
};

struct balescu_evolution {
  EvolutionResult result;
};

struct balescu_report {
  VerifyResult result;
};

namespace {

thread_local std::string g_last_error;

// Runs f, translating exceptions into status codes.
template <class F>
int guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return BALESCU_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return BALESCU_ERR_BUDGET;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BALESCU_ERR_INTERNAL;
  }
}

int null_arg(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return BALESCU_ERR_NULL_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void store(const Mat3& m, double out[9]) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[3 * i + j] = m(i, j);
}

VerifyConfig to_verify(const balescu_verify_config& c) {
  VerifyConfig v;
  v.plasma.k0 = c.k0;
  v.M = c.M;
  v.r_max = c.r_max;
  v.n3d = c.n3d;
  v.seed = c.seed;
  v.t_end = c.t_end;
  v.dt = c.dt;
  v.tol_scale = c.tol_scale;
  v.probes = c.probes;
  return v;
}

}  // namespace

extern "C" {

const char* balescu_last_error(void) { return g_last_error.c_str(); }

const char* balescu_status_name(int status) {
  if (status == BALESCU_ERR_NULL_ARGUMENT) return "null_argument";
  return error_code_name(static_cast<ErrorCode>(status));
}

void balescu_string_free(char* s) { std::free(s); }

int balescu_context_create(double k0, balescu_context** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto ctx = std::make_unique<balescu_context>();
    ctx->cfg.k0 = k0;
    ctx->cfg.validate();
    ctx->kernel = std::make_unique<KernelEvaluator>(ctx->cfg);
    ctx->freq = std::make_unique<CollisionFrequency>(ctx->cfg);
    *out = ctx.release();
  });
}

void balescu_context_destroy(balescu_context* ctx) { delete ctx; }

int balescu_weight_validate(double ell, double theta, double q) {
  return guarded([&] { WeightParams{ell, theta, q}.validate(); });
}

int balescu_psi(const balescu_context* ctx, double x, double* re, double* im) {
  if (!ctx || !re || !im) return null_arg("ctx/re/im");
  return guarded([&] {
    const DispersionValue p = psi(x, ctx->cfg.psi_switch_x);
    *re = p.re;
    *im = p.im;
  });
}

int balescu_epsilon(const balescu_context* ctx, double k_mag, double x, double* re, double* im) {
  if (!ctx || !re || !im) return null_arg("ctx/re/im");
  return guarded([&] {
    const DispersionValue e = epsilon(k_mag, x, ctx->cfg.psi_switch_x);
    *re = e.re;
    *im = e.im;
  });
}

int balescu_jay(const balescu_context* ctx, double x, double* out) {
  if (!ctx || !out) return null_arg("ctx/out");
  return guarded([&] { *out = jay(x, ctx->cfg); });
}

int balescu_jay_scaled(const balescu_context* ctx, double x, double* out) {
  if (!ctx || !out) return null_arg("ctx/out");
  return guarded([&] { *out = jay_scaled(x, ctx->cfg); });
}

int balescu_jay_oracle(const balescu_context* ctx, double x, double* out) {
  if (!ctx || !out) return null_arg("ctx/out");
  return guarded([&] { *out = jay_oracle(x, ctx->cfg); });
}

int balescu_lambda(const balescu_context* ctx, double r, double* lambda1, double* lambda2) {
  if (!ctx || !lambda1 || !lambda2) return null_arg("ctx/lambda1/lambda2");
  return guarded([&] {
    const EigenvaluePair p = ctx->freq->lambda_pair(r);
    *lambda1 = p.lambda1;
    *lambda2 = p.lambda2;
  });
}

int balescu_lambda_derivatives(const balescu_context* ctx, double r, double* dlambda1, double* dlambda2) {
  if (!ctx || !dlambda1 || !dlambda2) return null_arg("ctx/dlambda1/dlambda2");
  return guarded([&] {
    const EigenvalueDerivatives d = ctx->freq->lambda_derivatives(r);
    *dlambda1 = d.dlambda1;
    *dlambda2 = d.dlambda2;
  });
}

int balescu_lambda2_constant(const balescu_context* ctx, double* out) {
  if (!ctx || !out) return null_arg("ctx/out");
  return guarded([&] { *out = ctx->freq->lambda2_asymptotic_constant(); });
}

int balescu_kernel_B(const balescu_context* ctx, const double v[3], const double vstar[3], double b[9],
                     double b_scaled[9], double* v_R_mag) {
  if (!ctx || !v || !vstar || !b) return null_arg("ctx/v/vstar/b");
  return guarded([&] {
    const KernelMatrix km = ctx->kernel->kernel_B(Vec3(v[0], v[1], v[2]), Vec3(vstar[0], vstar[1], vstar[2]));
    store(km.b, b);
    if (b_scaled) store(km.b_scaled, b_scaled);
    if (v_R_mag) *v_R_mag = km.frame.v_R_mag;
  });
}

int balescu_landau_kernel(const double v[3], const double vstar[3], double L_const, double out[9]) {
  if (!v || !vstar || !out) return null_arg("v/vstar/out");
  return guarded([&] { store(landau_kernel(Vec3(v[0], v[1], v[2]), Vec3(vstar[0], vstar[1], vstar[2]), L_const), out); });
}

int balescu_radial_create(const balescu_context* ctx, int M, double r_max, balescu_radial** out) {
  if (!ctx || !out) return null_arg("ctx/out");
  *out = nullptr;
  return guarded([&] {
    RadialOperator::Options o;
    o.M = M;
    o.r_max = r_max;
    auto h = std::make_unique<balescu_radial>();
    h->op = std::make_unique<RadialOperator>(*ctx->kernel, *ctx->freq, o);
    *out = h.release();
  });
}

void balescu_radial_destroy(balescu_radial* op) { delete op; }

int balescu_radial_stable_dt(const balescu_radial* op, double* out) {
  if (!op || !out) return null_arg("op/out");
  return guarded([&] { *out = op->op->stable_dt(); });
}

int balescu_evolve(const balescu_radial* op, const char* preset, double ell, double theta, double q, double dt,
                   double t_end, balescu_evolution** out) {
  if (!op || !preset || !out) return null_arg("op/preset/out");
  *out = nullptr;
  return guarded([&] {
    const WeightParams wp{ell, theta, q};
    wp.validate();
    const Vector f0 = initial_preset(*op->op, preset);
    auto ev = std::make_unique<balescu_evolution>();
    ev->result = evolve_radial(*op->op, f0, wp, dt > 0.0 ? dt : op->op->stable_dt(), t_end);
    *out = ev.release();
  });
}

void balescu_evolution_destroy(balescu_evolution* ev) { delete ev; }

int balescu_evolution_size(const balescu_evolution* ev, size_t* n) {
  if (!ev || !n) return null_arg("ev/n");
  *n = ev->result.series.size();
  return BALESCU_OK;
}

int balescu_evolution_sample(const balescu_evolution* ev, size_t i, double* t, double* mass, double* energy,
                             double* l2, double* weighted, double* sigma_norm) {
  if (!ev || !t || !mass || !energy || !l2 || !weighted || !sigma_norm) return null_arg("ev/outputs");
  if (i >= ev->result.series.size()) {
    g_last_error = "evolution sample index out of range";
    return BALESCU_ERR_INPUT;
  }
  const EvolutionSample& s = ev->result.series[i];
  *t = s.t;
  *mass = s.moments.mass;
  *energy = s.moments.energy;
  *l2 = s.l2;
  *weighted = s.weighted;
  *sigma_norm = s.sigma_norm;
  return BALESCU_OK;
}

int balescu_evolution_get_summary(const balescu_evolution* ev, struct balescu_evolution_summary* out) {
  if (!ev || !out) return null_arg("ev/out");
  const EvolutionSummary& s = ev->result.summary;
  out->fitted_p = s.fitted_p;
  out->fitted_rate = s.fitted_rate;
  out->theta_ratio = s.theta_ratio;
  out->max_mass_drift = s.max_mass_drift;
  out->max_energy_drift = s.max_energy_drift;
  out->l2_monotone = s.l2_monotone ? 1 : 0;
  out->weighted_monotone = s.weighted_monotone ? 1 : 0;
  out->steps = s.steps;
  out->dt = s.dt;
  return BALESCU_OK;
}

void balescu_verify_config_default(struct balescu_verify_config* cfg) {
  if (!cfg) return;
  const VerifyConfig d;
  cfg->k0 = d.plasma.k0;
  cfg->M = d.M;
  cfg->r_max = d.r_max;
  cfg->n3d = d.n3d;
  cfg->seed = d.seed;
  cfg->t_end = d.t_end;
  cfg->dt = d.dt;
  cfg->tol_scale = d.tol_scale;
  cfg->probes = d.probes;
}

int balescu_verify_run(const struct balescu_verify_config* cfg, const char* suites, balescu_report** out) {
  if (!cfg || !out) return null_arg("cfg/out");
  *out = nullptr;
  return guarded([&] {
    std::vector<std::string> list;
    if (suites) {
      std::stringstream ss(suites);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) list.push_back(item);
    }
    auto rep = std::make_unique<balescu_report>();
    rep->result = run_verification(to_verify(*cfg), list);
    *out = rep.release();
  });
}

void balescu_report_destroy(balescu_report* rep) { delete rep; }

int balescu_report_all_pass(const balescu_report* rep, int* all_pass) {
  if (!rep || !all_pass) return null_arg("rep/all_pass");
  *all_pass = rep->result.all_pass() ? 1 : 0;
  return BALESCU_OK;
}

int balescu_report_size(const balescu_report* rep, size_t* n) {
  if (!rep || !n) return null_arg("rep/n");
  *n = rep->result.checks.size();
  return BALESCU_OK;
}

int balescu_report_check(const balescu_report* rep, size_t i, const char** name, double* target, double* achieved,
                         double* tolerance, int* pass, double* runtime_s) {
  if (!rep || !name || !target || !achieved || !tolerance || !pass || !runtime_s) return null_arg("rep/outputs");
  if (i >= rep->result.checks.size()) {
    g_last_error = "check index out of range";
    return BALESCU_ERR_INPUT;
  }
  const CheckReport& c = rep->result.checks[i];
  *name = c.name.c_str();
  *target = c.target;
  *achieved = c.achieved;
  *tolerance = c.tolerance;
  *pass = c.pass ? 1 : 0;
  *runtime_s = c.runtime_s;
  return BALESCU_OK;
}

int balescu_report_extra_size(const balescu_report* rep, size_t* n) {
  if (!rep || !n) return null_arg("rep/n");
  *n = rep->result.reports.size();
  return BALESCU_OK;
}

int balescu_report_extra(const balescu_report* rep, size_t i, const char** name, double* value) {
  if (!rep || !name || !value) return null_arg("rep/name/value");
  if (i >= rep->result.reports.size()) {
    g_last_error = "report index out of range";
    return BALESCU_ERR_INPUT;
  }
  *name = rep->result.reports[i].name.c_str();
  *value = rep->result.reports[i].value;
  return BALESCU_OK;
}

int balescu_report_json(const balescu_report* rep, char** out) {
  if (!rep || !out) return null_arg("rep/out");
  return guarded([&] { *out = dup_string(checks_to_json(rep->result.checks)); });
}

int balescu_report_csv(const balescu_report* rep, char** out) {
  if (!rep || !out) return null_arg("rep/out");
  return guarded([&] { *out = dup_string(checks_to_csv(rep->result.checks)); });
}

int balescu_manifest_json(const struct balescu_verify_config* cfg, char** out) {
  if (!cfg || !out) return null_arg("cfg/out");
  return guarded([&] { *out = dup_string(manifest_to_json(to_verify(*cfg))); });
}

}  // extern "C"
