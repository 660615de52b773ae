// One pass/fail line per acceptance criterion, with wall-clock runtimes
// against their budgets. Exit status is the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "balescu/dispersion.hpp"
#include "balescu/frequency.hpp"
#include "balescu/grid3d.hpp"
#include "balescu/kernel.hpp"
#include "balescu/radial.hpp"

using namespace balescu;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  const bool pass = o.ok && dt < budget_s;
  if (!pass) ++failures;
  std::printf("criterion %2d %s  %s: %s [%.2f s of %.0f s]\n", id, pass ? "PASS" : "FAIL", title, o.detail.c_str(), dt,
              budget_s);
  std::fflush(stdout);
}

void report(const std::string& line) {
  std::printf("             report  %s\n", line.c_str());
  std::fflush(stdout);
}

double sqrt_mu(double r) { return std::pow(2.0 * std::numbers::pi, -0.75) * std::exp(-0.25 * r * r); }

double null_residual(const RadialOperator& op, int power) {
  Vector g(op.grid().M);
  for (int k = 0; k < op.grid().M; ++k) g[k] = std::pow(op.grid().r[k], power) * sqrt_mu(op.grid().r[k]);
  return op.norm(op.apply_L(g)) / op.norm(g);
}

}  // namespace

int main() {
  const PlasmaConfig cfg;  // k0 = 1
  const double j0_exact = 2.0 * std::log(2.0) - 1.0;
  const double s8pi = std::sqrt(8.0 * std::numbers::pi);

  criterion(1, "J closed form vs quadrature", 5.0, [&] {
    double worst = 0.0;
    for (int i = 0; i < 60; ++i) {
      const double x = 12.0 * i / 59.0;
      worst = std::max(worst, std::abs(jay(x, cfg) / jay_oracle(x, cfg) - 1.0));
    }
    const double e0 = std::abs(jay(0.0, cfg) - j0_exact);
    const double e1 = std::abs(jay_oracle(0.0, cfg) - j0_exact);
    return Outcome{worst < 1e-7 && e0 <= 1e-8 && e1 <= 1e-8,
                   fmt("max rel diff %.2e (< 1e-7); |J(0) - (2ln2-1)| %.1e, oracle %.1e (<= 1e-8)", worst, e0, e1)};
  });

  criterion(2, "x^3 exp(-x^2/2) J(x) at x = 12", 1.0, [&] {
    const double v = 1728.0 * jay_scaled(12.0, cfg);
    const double rel = std::abs(v / s8pi - 1.0);
    return Outcome{rel <= 0.02, fmt("%.6f vs sqrt(8 pi) = %.6f, rel %.4f (<= 0.02)", v, s8pi, rel)};
  });

  criterion(3, "x^2 Psi_R(x) at x = 20", 1.0, [&] {
    const double v = 400.0 * psi(20.0, cfg.psi_switch_x).re;
    return Outcome{std::abs(v + 1.0) <= 0.01, fmt("%.6f vs -1 (+- 1%%)", v)};
  });

  criterion(4, "sigma eigenvalues at v = 0", 30.0, [&] {
    const CollisionFrequency freq(cfg);
    const EigenvaluePair p = freq.lambda_pair(0.0);
    const double closed = std::sqrt(std::numbers::pi / 2.0) * j0_exact / 3.0;
    const double o = (sigma_k_oracle(Vec3::Zero(), cfg) - freq.sigma_matrix(Vec3::Zero())).norm() /
                     freq.sigma_matrix(Vec3::Zero()).norm();
    const bool ok = std::abs(p.lambda1 - p.lambda2) <= 1e-8 && std::abs(p.lambda1 - closed) <= 1e-8 &&
                    std::abs(p.lambda1 - 0.16138) < 5e-6 && o < 1e-3;
    return Outcome{ok, fmt("lambda1 = %.8f, lambda2 = %.8f; k-space oracle rel diff %.1e (< 1e-3)", p.lambda1,
                           p.lambda2, o)};
  });

  criterion(5, "eigenvalue asymptotics", 10.0, [&] {
    const CollisionFrequency freq(cfg);
    const double d = freq.I2(30.0) - freq.I2(15.0);
    const double target = s8pi * std::numbers::ln2;
    const double rl2 = 100.0 * freq.lambda_pair(100.0).lambda2;
    const double c2 = freq.lambda2_asymptotic_constant();
    const bool ok = std::abs(d / target - 1.0) <= 0.01 && std::abs(rl2 / c2 - 1.0) <= 0.01;
    return Outcome{ok, fmt("int_15^30 = %.5f vs %.5f; 100 lambda2(100) = %.5f", d, target, rl2) +
                           fmt(" vs %.5f (both within 1%%)", c2)};
  });

  criterion(6, "kernel point value and sweeps", 10.0, [&] {
    const KernelEvaluator k(cfg);
    const double c = std::numbers::pi * j0_exact / 8.0;
    const Mat3 b = k.kernel_B(Vec3(1, 0, 0), Vec3(-1, 0, 0)).b;
    const double point = (b - Mat3(Vec3(0.0, c, c).asDiagonal())).cwiseAbs().maxCoeff();
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    double worst = 0.0;
    for (int s = 0; s < 1000; ++s) {
      const Vec3 v(u(rng), u(rng), u(rng)), vs(u(rng), u(rng), u(rng));
      const KernelMatrix km = k.kernel_B(v, vs);
      const double nb = km.b_scaled.norm();
      const Mat3 sym = 0.5 * (km.b_scaled + km.b_scaled.transpose());
      const double emin = Eigen::SelfAdjointEigenSolver<Mat3>(sym, Eigen::EigenvaluesOnly).eigenvalues()[0];
      worst = std::max({worst, (km.b_scaled - km.b_scaled.transpose()).norm() / nb,
                        (km.b_scaled * km.frame.u_hat).norm() / nb, std::max(0.0, -emin) / nb});
    }
    return Outcome{point <= 1e-6 && worst <= 1e-12,
                   fmt("diag(0, c, c) entries within %.1e (<= 1e-6); sweep worst %.1e (<= 1e-12)", point, worst)};
  });

  const KernelEvaluator kernel(cfg);
  const CollisionFrequency freq(cfg);
  const RadialOperator op(kernel, freq);

  criterion(7, "null space of the radial operator", 120.0, [&] {
    RadialOperator::Options o;
    o.M = 320;
    const RadialOperator fine(kernel, freq, o);
    const double a = null_residual(op, 0), b = null_residual(op, 2);
    const double a2 = null_residual(fine, 0), b2 = null_residual(fine, 2);
    const bool ok = a < 5e-4 && b < 5e-4 && a2 <= 0.5 * a && b2 <= 0.5 * b;
    return Outcome{ok, fmt("sqrt(mu) %.2e -> %.2e", a, a2) + fmt("; r^2 sqrt(mu) %.2e -> %.2e (M 160 -> 320)", b, b2)};
  });

  criterion(8, "radial K vs 3-D evaluation", 300.0, [&] {
    const RadialVs3D cmp = compare_K_radial_3d(
        op, kernel, [](double r) { return std::exp(-0.5 * r * r); },
        [](double r) { return -r * std::exp(-0.5 * r * r); }, 15);
    return Outcome{cmp.rel_l2 < 2e-2, fmt("relative L2 %.3e over %.0f nodes (< 2e-2)", cmp.rel_l2, cmp.nodes)};
  });

  criterion(9, "evolution: monotone |f|_0, conservation", 300.0, [&] {
    bool ok = true;
    double mass = 0.0, energy = 0.0;
    for (const char* preset : {"gaussian_bump", "shell", "hermite_mode"}) {
      const Vector f0 = initial_preset(op, preset);
      for (double theta : {1.0, 2.0}) {
        const WeightParams wp{0.0, theta, theta < 2.0 ? 1.0 : 0.5};
        const EvolutionResult ev = evolve_radial(op, f0, wp, op.stable_dt(), 5.0);
        for (std::size_t i = 1; i < ev.series.size(); ++i) ok = ok && ev.series[i].l2 <= ev.series[i - 1].l2;
        mass = std::max(mass, ev.summary.max_mass_drift);
        energy = std::max(energy, ev.summary.max_energy_drift);
        report(std::string(preset) + fmt(": theta = %.0f, fitted p = %.3f, theta/(theta+1) = %.3f", theta,
                                         ev.summary.fitted_p, ev.summary.theta_ratio));
      }
    }
    ok = ok && mass < 1e-6 && energy < 1e-6;
    return Outcome{ok, std::string(ok ? "no increase at any step" : "some check failed") +
                           fmt("; mass drift %.1e, energy drift %.1e (< 1e-6)", mass, energy)};
  });

  criterion(10, "coercivity probe", 300.0, [&] {
    const CoercivityReport rep = coercivity_probe(op, 50, 1);
    int bad = 0;
    for (double x : rep.ratios) bad += x > 0.0 ? 0 : 1;
    return Outcome{bad == 0, fmt("%.0f of 50 ratios positive, minimum %.4f, maximum %.4f", 50.0 - bad, rep.min_ratio,
                                 rep.max_ratio)};
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures;
}
