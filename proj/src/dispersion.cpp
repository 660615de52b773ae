#include "balescu/dispersion.hpp"

#include <cmath>
#include <numbers>

#include "balescu/error.hpp"
#include "balescu/quadrature.hpp"

namespace balescu {

namespace {

constexpr double kSqrtHalfPi = 1.2533141373155002512;  // sqrt(pi / 2)

// x F(x) - 1 for x > switch: sum_{n>=1} (2n-1)!! / x^{2n}, cut at the
// smallest term.
double asymptotic_tail(double ax) {
  const double inv2 = 1.0 / (ax * ax);
  double term = 1.0;
  double sum = 0.0;
  for (int n = 1; n < 200; ++n) {
    const double next = term * (2.0 * n - 1.0) * inv2;
    if (next > term && n > 1) break;
    term = next;
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

// F(x) = x exp(-x^2/2) 1F1(1/2; 3/2; x^2/2); every term positive.
double kummer_series(double ax) {
  const double z = 0.5 * ax * ax;
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < 2000; ++n) {
    term *= z / n;
    const double add = term / (2.0 * n + 1.0);
    sum += add;
    if (add < 1e-17 * sum && n > z) break;
  }
  return ax * std::exp(-z) * sum;
}

}  // namespace

double DispersionValue::abs() const { return std::hypot(re, im); }

double dawson_scaled(double x, double switch_x) {
  const double ax = std::abs(x);
  if (ax == 0.0) return 0.0;
  const double f = ax <= switch_x ? kummer_series(ax) : (1.0 + asymptotic_tail(ax)) / ax;
  return x < 0.0 ? -f : f;
}

DispersionValue psi(double x, double switch_x) {
  const double ax = std::abs(x);
  DispersionValue out;
  out.re = ax <= switch_x ? 1.0 - ax * kummer_series(ax) : -asymptotic_tail(ax);
  const double im = -kSqrtHalfPi * ax * std::exp(-0.5 * ax * ax);
  out.im = x < 0.0 ? -im : im;
  return out;
}

DispersionValue epsilon(double k_mag, double x, double switch_x) {
  if (!(k_mag > 0.0)) throw Error(ErrorCode::domain, "epsilon: |k| must be positive");
  const DispersionValue p = psi(x, switch_x);
  const double inv = 1.0 / (k_mag * k_mag);
  return {1.0 + p.re * inv, p.im * inv};
}

double psi_r_pv_oracle(double x, const PlasmaConfig& cfg) {
  const double ax = std::abs(x);
  if (ax > 8.0) throw Error(ErrorCode::domain, "psi_r_pv_oracle: |x| > 8 is outside the oracle range");
  if (ax == 0.0) return 1.0;
  // P.V. int g(y)/(x - y) dy = int_0^inf (g(x - t) - g(x + t)) / t dt, and for
  // the Gaussian g(x - t) - g(x + t) = 2 exp(-(x^2 + t^2)/2) sinh(x t).
  const auto integrand = [ax](double t) {
    if (t == 0.0) return 2.0 * ax * std::exp(-0.5 * ax * ax);
    return 2.0 * std::exp(-0.5 * (ax * ax + t * t)) * std::sinh(ax * t) / t;
  };
  // exp(-(T - x)^2/2) < 1e-31 beyond T.
  const double T = ax + 12.0;
  const double breaks[] = {ax};
  const auto res = quad::adaptive_with_breaks(integrand, 0.0, T, breaks, 0.01 * cfg.quad_rel_tol,
                                              cfg.quad_abs_tol);
  return 1.0 - ax * res.value / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace balescu
