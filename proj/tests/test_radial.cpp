#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "balescu/error.hpp"
#include "balescu/quadrature.hpp"
#include "balescu/radial.hpp"

using namespace balescu;

namespace {

struct Fixture {
  PlasmaConfig cfg;
  KernelEvaluator kernel{cfg};
  CollisionFrequency freq{cfg};
  RadialOperator op{kernel, freq};
};

const Fixture& fx() {
  static const Fixture f;
  return f;
}

double sqrt_mu(double r) { return std::pow(2.0 * std::numbers::pi, -0.75) * std::exp(-0.25 * r * r); }

Vector sample(const RadialOperator& op, double (*f)(double)) {
  return RadialFunction::sample(op.grid(), f).values;
}

Vector probe(const RadialOperator& op, double c0, double c1, double c2, double a) {
  Vector g(op.grid().M);
  for (int k = 0; k < op.grid().M; ++k) {
    const double r2 = op.grid().r[k] * op.grid().r[k];
    g[k] = (c0 + c1 * r2 + c2 * r2 * r2) * std::exp(-a * r2);
  }
  return g;
}

double null_residual(const RadialOperator& op, int power) {
  Vector g(op.grid().M);
  for (int k = 0; k < op.grid().M; ++k) g[k] = std::pow(op.grid().r[k], power) * sqrt_mu(op.grid().r[k]);
  return op.norm(op.apply_L(g)) / op.norm(g);
}

}  // namespace

TEST_CASE("Maxwellian normalization") {
  CHECK(maxwellian(0.0) == doctest::Approx(std::pow(2.0 * std::numbers::pi, -1.5)).epsilon(1e-15));
  CHECK(std::abs(maxwellian(0.0) - 0.063494) < 1e-6);
  // Midpoint rule in r on the cell centres.
  const RadialGrid g(160, 8.0);
  double m0 = 0.0, m2 = 0.0, cells = 0.0;
  for (int k = 0; k < g.M; ++k) {
    const double shell = 4.0 * std::numbers::pi * g.r[k] * g.r[k] * g.h;
    m0 += shell * maxwellian(g.r[k]);
    m2 += shell * g.r[k] * g.r[k] * maxwellian(g.r[k]);
    cells += g.vol[k] * maxwellian(g.r[k]);
  }
  CHECK(std::abs(m0 - 1.0) < 1e-6);
  CHECK(std::abs(m2 - 3.0) < 1e-5);
  // The exact cell volumes add an O(h^2) term.
  CHECK(std::abs(cells - 1.0) < 1e-3);
}

TEST_CASE("velocity weight") {
  const WeightParams flat{0.0, 0.0, 0.8};
  for (double r : {0.0, 1.0, 7.0}) CHECK(weight_w(flat, r) == doctest::Approx(std::exp(0.2)).epsilon(1e-15));
  const WeightParams poly{2.0, 1.0, 1e-12};
  CHECK(weight_w(poly, 3.0) == doctest::Approx(10.0).epsilon(1e-10));
  CHECK(weight_w(WeightParams{0.0, 2.0, 0.5}, 0.0) == doctest::Approx(std::exp(0.125)).epsilon(1e-15));
  CHECK_THROWS_AS(weight_w(WeightParams{0.0, 2.0, 1.0}, 1.0), Error);
  CHECK_THROWS_AS(weight_w(WeightParams{0.0, 2.5, 0.5}, 1.0), Error);
  CHECK_THROWS_AS(weight_w(WeightParams{0.0, 1.0, 0.0}, 1.0), Error);
}

TEST_CASE("projection onto the radial invariants") {
  const RadialOperator& op = fx().op;
  const Vector s = sample(op, sqrt_mu);
  CHECK((op.project_P(s) - s).norm() < 1e-12 * s.norm());
  const Vector g = probe(op, 1.0, -0.3, 0.05, 0.3);
  const Vector pg = op.project_P(g);
  CHECK((op.project_P(pg) - pg).norm() < 1e-12 * pg.norm());
  const MomentVector m = op.moments(g - pg);
  CHECK(std::abs(m.mass) < 1e-14);
  CHECK(std::abs(m.energy) < 1e-13);
}

TEST_CASE("sigma norm") {
  const RadialOperator& op = fx().op;
  CHECK(op.norm_sigma_sq(Vector::Zero(op.grid().M)) == 0.0);
  const Vector g = probe(op, 1.0, 0.2, -0.1, 0.4);
  CHECK(op.norm_sigma_sq(2.5 * g) == doctest::Approx(6.25 * op.norm_sigma_sq(g)).epsilon(1e-13));
  // For sqrt(mu), g'^2 = r^2 g^2 / 4, so the norm is int lambda1 r^2 mu / 2 dv,
  // not zero.
  const Vector s = sample(op, sqrt_mu);
  const double ref = quad::adaptive(
                         [&](double r) {
                           return 4.0 * std::numbers::pi * r * r * fx().freq.lambda_pair(r).lambda1 * r * r *
                                  maxwellian(r) / 2.0;
                         },
                         0.0, 8.0, 1e-12, 1e-15)
                         .value;
  CHECK(op.norm_sigma_sq(s) == doctest::Approx(ref).epsilon(1e-3));
}

TEST_CASE("diffusion part") {
  const RadialOperator& op = fx().op;
  const Vector a = probe(op, 1.0, -0.5, 0.02, 0.3);
  const Vector b = probe(op, 0.2, 0.7, -0.1, 0.45);
  const double ab = op.inner(op.apply_A(a), b);
  const double ba = op.inner(a, op.apply_A(b));
  CHECK(std::abs(ab - ba) <= 1e-10 * std::abs(ab));
  CHECK(op.inner(op.apply_A(a), a) < 0.0);

  // Pointwise multiplier on a constant, away from both boundaries.
  const Vector one = Vector::Ones(op.grid().M);
  const Vector A1 = op.apply_A(one);
  for (int k = 0; k < op.grid().M; ++k) {
    const double r = op.grid().r[k];
    if (r < 1.0 || r > 5.0) continue;
    const EigenvaluePair p = fx().freq.lambda_pair(r);
    const double d1 = fx().freq.lambda_derivatives(r).dlambda1;
    const double ref = 0.5 * (3.0 * p.lambda1 + r * d1) - 0.25 * r * r * p.lambda1;
    CHECK(A1[k] == doctest::Approx(ref).epsilon(1e-3));
  }
}

TEST_CASE("null space") {
  const RadialOperator& op = fx().op;
  const double r0 = null_residual(op, 0);
  const double r2 = null_residual(op, 2);
  CHECK(r0 < 5e-4);
  CHECK(r2 < 5e-4);
  RadialOperator::Options o;
  o.M = 320;
  const RadialOperator fine(fx().kernel, fx().freq, o);
  CHECK(null_residual(fine, 0) <= 0.5 * r0);
  CHECK(null_residual(fine, 2) <= 0.5 * r2);
}

TEST_CASE("symmetry and positivity of L") {
  const RadialOperator& op = fx().op;
  Vector a = probe(op, 1.0, -0.5, 0.02, 0.3);
  Vector b = probe(op, 0.2, 0.7, -0.1, 0.45);
  a -= op.project_P(a);
  b -= op.project_P(b);
  const double scale = std::sqrt(op.bilinear_L(a, a) * op.bilinear_L(b, b));
  CHECK(std::abs(op.bilinear_L(a, b) - op.bilinear_L(b, a)) < 1e-4 * scale);
  CHECK(op.bilinear_L(a, a) > 0.0);
  // The weak form and the assembled matrix agree.
  CHECK(op.bilinear_L(a, b) == doctest::Approx(op.inner(op.apply_L(a), b)).epsilon(1e-10));
  // L = -A - K.
  CHECK((op.apply_L(a) + op.apply_A(a) + op.apply_K(a)).norm() < 1e-12 * op.apply_L(a).norm());
}

TEST_CASE("K is controlled by the sigma norm") {
  // |<K g, g>| <= |g|_sigma^2 + C |g|^2; report the smallest C on samples.
  const RadialOperator& op = fx().op;
  double C = 0.0;
  for (double a : {0.2, 0.3, 0.5}) {
    for (double c1 : {-0.5, 0.0, 0.5}) {
      const Vector g = probe(op, 1.0, c1, 0.01, a);
      const double kgg = std::abs(op.inner(op.apply_K(g), g));
      C = std::max(C, (kgg - op.norm_sigma_sq(g)) / op.inner(g, g));
    }
  }
  CHECK(std::isfinite(C));
  MESSAGE("fitted C = " << C);
}

TEST_CASE("coercivity probe") {
  const RadialOperator& op = fx().op;
  const CoercivityReport rep = coercivity_probe(op, 50, 1);
  REQUIRE(rep.ratios.size() == 50);
  for (double x : rep.ratios) CHECK(x > 0.0);
  CHECK(rep.min_ratio > 0.0);
  int total = 0;
  for (int c : rep.histogram_counts) total += c;
  CHECK(total == 50);
  const CoercivityReport again = coercivity_probe(op, 50, 1);
  CHECK(again.ratios == rep.ratios);

  Vector g = probe(op, 1.0, -0.2, 0.03, 0.35);
  g -= op.project_P(g);
  const double r1 = op.bilinear_L(g, g) / op.norm_sigma_sq(g);
  const Vector cg = -3.0 * g;
  CHECK(op.bilinear_L(cg, cg) / op.norm_sigma_sq(cg) == doctest::Approx(r1).epsilon(1e-13));
}

TEST_CASE("evolution") {
  const RadialOperator& op = fx().op;
  const WeightParams wp{0.0, 1.0, 1.0};
  const double dt = op.stable_dt();

  const EvolutionResult zero = evolve_radial(op, Vector::Zero(op.grid().M), wp, dt, 1.0);
  for (const EvolutionSample& s : zero.series) CHECK(s.l2 == 0.0);

  const Vector f0 = initial_preset(op, "gaussian_bump");
  const EvolutionResult ev = evolve_radial(op, f0, wp, dt, 5.0);
  CHECK(ev.series.front().t == 0.0);
  CHECK(ev.series.front().l2 == op.norm(f0));
  CHECK(ev.series.front().weighted == op.weighted_norm(f0, &wp));
  CHECK(ev.series.back().t == doctest::Approx(5.0).epsilon(1e-12));
  for (std::size_t i = 1; i < ev.series.size(); ++i) CHECK(ev.series[i].l2 < ev.series[i - 1].l2);
  CHECK(ev.summary.l2_monotone);
  CHECK(ev.summary.max_mass_drift < 1e-6);
  CHECK(ev.summary.max_energy_drift < 1e-6);
  CHECK(ev.summary.theta_ratio == 0.5);
  CHECK(ev.summary.fitted_p > 0.0);

  for (const char* name : {"shell", "hermite_mode"}) {
    const Vector g = initial_preset(op, name);
    const MomentVector m = op.moments(g);
    CHECK(std::abs(m.mass) < 1e-14);
    CHECK(std::abs(m.energy) < 1e-13);
  }
  CHECK_THROWS_AS(initial_preset(op, "nope"), Error);

  try {
    evolve_radial(op, f0, wp, 2.0 * dt, 1.0);
    FAIL("expected a step-size error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::step_size);
    CHECK(std::string(e.what()).find("--dt") != std::string::npos);
  }
  try {
    evolve_radial(op, sample(op, sqrt_mu), wp, dt, 1.0);
    FAIL("expected an input error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::input);
  }
}

TEST_CASE("stretched-exponential fit") {
  std::vector<double> t, n;
  for (int i = 0; i <= 200; ++i) {
    t.push_back(0.025 * i);
    n.push_back(3.0 * std::exp(-1.7 * std::pow(t.back(), 0.6)));
  }
  const auto [p, rate] = fit_stretched_exponential(t, n);
  CHECK(p == doctest::Approx(0.6).epsilon(1e-6));
  CHECK(rate == doctest::Approx(1.7).epsilon(1e-6));
}
