#include "balescu/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "balescu/dispersion.hpp"
#include "balescu/error.hpp"
#include "balescu/quadrature.hpp"

namespace balescu {

namespace {

constexpr double kMaxUnscaledX = 25.0;
const double kSqrtTwoOverPi = std::sqrt(2.0 / std::numbers::pi);
const double kInvTwoPi32 = std::pow(2.0 * std::numbers::pi, -1.5);

// atan(t) / t, smooth through t = 0.
double atanc(double t) {
  if (std::abs(t) < 1e-4) {
    const double t2 = t * t;
    return 1.0 - t2 / 3.0 + t2 * t2 / 5.0;
  }
  return std::atan(t) / t;
}

// Both parts of J from one Psi evaluation. The arctan term comes back
// unscaled (`term`) and pre-fused with exp(-x^2/2) (`term_scaled`).
struct JayParts {
  double log_term = 0.0;
  double term = 0.0;
  double term_scaled = 0.0;
};

JayParts jay_parts(double x, const PlasmaConfig& cfg, bool want_scaled) {
  const DispersionValue p = psi(x, cfg.psi_switch_x);
  const double k2 = cfg.k0 * cfg.k0;
  JayParts out;
  // 1 + (k0^4 + 2 Psi_R k0^2) / |Psi|^2 = |k0^2 + Psi|^2 / |Psi|^2.
  out.log_term = 2.0 * (std::log(std::hypot(k2 + p.re, p.im)) - std::log(std::hypot(p.re, p.im)));

  // atan(A) - atan(C) = arg(1 + AC + i(A - C)) for A = Psi_R/Psi_I,
  // C = (k0^2 + Psi_R)/Psi_I; scaling by Psi_I^2 > 0 keeps the argument.
  const double X = p.im * p.im + p.re * (k2 + p.re);
  if (X > 0.0) {
    // (Psi_R / Psi_I) (-atan(k0^2 Psi_I / X)), removable at Psi_I = 0.
    const double t = k2 * p.im / X;
    out.term = -2.0 * p.re * (k2 / X) * atanc(t);
    if (want_scaled) out.term_scaled = std::exp(-0.5 * x * x) * out.term;
  } else {
    const double y = std::copysign(k2 * std::abs(p.im), x);
    const double delta = std::atan2(y, X);
    if (std::abs(x) <= kMaxUnscaledX) out.term = 2.0 * (p.re / p.im) * delta;
    // exp(-x^2/2) / Psi_I = -sqrt(2/pi) / x.
    if (want_scaled) out.term_scaled = -2.0 * kSqrtTwoOverPi * (p.re / x) * delta;
  }
  return out;
}

}  // namespace

double jay(double x, const PlasmaConfig& cfg) {
  if (!(std::abs(x) <= kMaxUnscaledX))
    throw Error(ErrorCode::overflow_guard, "jay: |x| > 25 is not representable; use jay_scaled");
  const JayParts parts = jay_parts(x, cfg, false);
  return parts.log_term + parts.term;
}

double jay_scaled(double x, const PlasmaConfig& cfg) {
  const JayParts parts = jay_parts(x, cfg, true);
  const double e = std::exp(-0.5 * x * x);
  // Far out |Psi|^2 underflows and the log term is inf; its weight is 0.
  return (e == 0.0 ? 0.0 : e * parts.log_term) + parts.term_scaled;
}

double jay_oracle(double x, const PlasmaConfig& cfg) {
  if (!(std::abs(x) <= kMaxUnscaledX))
    throw Error(ErrorCode::overflow_guard, "jay_oracle: |x| > 25 is outside the oracle range");
  const DispersionValue p = psi(x, cfg.psi_switch_x);
  const double k2 = cfg.k0 * cfg.k0;
  // t = rho^2 + Psi_R: 4 rho^3 d rho / (...) = 2 (t - Psi_R) dt / (t^2 + Psi_I^2).
  const double a = p.re;
  const double b = k2 + p.re;
  const double g2 = p.im * p.im;
  const auto f = [a, g2](double t) { return 2.0 * (t - a) / (t * t + g2); };
  std::vector<double> breaks;
  if (a < 0.0 && b > 0.0) {
    // Lorentzian of width |Psi_I| at t = 0: geometric breakpoints on both sides.
    breaks.push_back(0.0);
    const double w = std::max(std::abs(p.im), 1e-300);
    for (double d = w; d < std::max(-a, b); d *= 8.0) {
      breaks.push_back(d);
      breaks.push_back(-d);
    }
  }
  return quad::adaptive_with_breaks(f, a, b, breaks, cfg.quad_rel_tol, cfg.quad_abs_tol).value;
}

// --- geometry ---------------------------------------------------------------

RelVelFrame make_frame(const Vec3& v, const Vec3& vstar) {
  RelVelFrame fr;
  fr.u = v - vstar;
  fr.u_mag = fr.u.norm();
  if (!(fr.u_mag > 0.0)) throw Error(ErrorCode::singularity, "kernel: v == v* (|v - v*| = 0)");
  fr.u_hat = fr.u / fr.u_mag;
  fr.v_par = fr.u_hat.dot(v);
  fr.vstar_par = fr.u_hat.dot(vstar);
  fr.v_R_mag = (v - fr.v_par * fr.u_hat).norm();

  int axis = 0;
  fr.u_hat.cwiseAbs().minCoeff(&axis);
  Vec3 e = Vec3::Zero();
  e[axis] = 1.0;
  fr.plane1 = (e - e.dot(fr.u_hat) * fr.u_hat).normalized();
  fr.plane2 = fr.u_hat.cross(fr.plane1);
  return fr;
}

XiPair xi_matrices(const RelVelFrame& frame, const Vec3& v) {
  XiPair out;
  const double a1 = frame.plane1.dot(v);
  const double a2 = frame.plane2.dot(v);
  const double vr2 = a1 * a1 + a2 * a2;
  if (std::sqrt(vr2) < kSingularTol) {
    out.degenerate = true;
    return out;
  }
  const Vec3 along = (a1 * frame.plane1 + a2 * frame.plane2) / std::sqrt(vr2);
  const Vec3 across = (a2 * frame.plane1 - a1 * frame.plane2) / std::sqrt(vr2);
  out.xi1 = across * across.transpose();
  out.xi2 = along * along.transpose();
  return out;
}

// --- weights ----------------------------------------------------------------

KernelEvaluator::KernelEvaluator(const PlasmaConfig& cfg) : KernelEvaluator(cfg, Options{}) {}

KernelEvaluator::KernelEvaluator(const PlasmaConfig& cfg, const Options& opts)
    : cfg_(cfg), opts_(opts) {
  cfg_.validate();
  if (opts_.theta_nodes < 4 || opts_.table_points < 8 || !(opts_.table_rmax > 0.0))
    throw Error(ErrorCode::domain, "KernelEvaluator: invalid options");
  build_table();
}

Weights KernelEvaluator::direct_weights(double r, int nodes) const {
  const quad::Rule& rule = quad::gauss_legendre(nodes);
  const double half = 0.25 * std::numbers::pi;
  double s1 = 0.0;
  double s2 = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double th = half * (1.0 + rule.nodes[i]);
    const double c = std::cos(th);
    const double s = std::sin(th);
    const double rs = r * s;
    const double val = rule.weights[i] * jay_scaled(r * c, cfg_) * std::exp(-0.5 * rs * rs);
    s1 += val * s * s;
    s2 += val * c * c;
  }
  Weights w;
  w.w1_scaled = s1 * half;
  w.w2_scaled = s2 * half;
  const double grow = 0.5 * r * r;
  if (grow < 700.0) {
    w.w1 = w.w1_scaled * std::exp(grow);
    w.w2 = w.w2_scaled * std::exp(grow);
  } else {
    w.w1 = w.w2 = std::numeric_limits<double>::infinity();
  }
  return w;
}

Weights KernelEvaluator::weights(double v_R_mag) const {
  if (!(v_R_mag >= 0.0)) throw Error(ErrorCode::domain, "weights: |v_R| must be nonnegative");
  const Weights lo = direct_weights(v_R_mag, opts_.theta_nodes);
  const Weights hi = direct_weights(v_R_mag, 2 * opts_.theta_nodes);
  const double tol = 10.0 * cfg_.quad_rel_tol;
  const double d1 = std::abs(hi.w1_scaled - lo.w1_scaled);
  const double d2 = std::abs(hi.w2_scaled - lo.w2_scaled);
  if (d1 > tol * hi.w1_scaled || d2 > tol * hi.w2_scaled) {
    std::ostringstream msg;
    msg << "weights: theta quadrature not converged at |v_R| = " << v_R_mag
        << " (doubled-order change " << std::max(d1 / hi.w1_scaled, d2 / hi.w2_scaled) << ")";
    throw ToleranceError(msg.str(), hi.w1_scaled, d1);
  }
  return hi;
}

void KernelEvaluator::build_table() {
  const int n = opts_.table_points;
  table_h_ = opts_.table_rmax / (n - 1);
  w1s_.resize(n);
  w2s_.resize(n);
  for (int i = 0; i < n; ++i) {
    const Weights w = weights(i * table_h_);
    w1s_[i] = w.w1_scaled;
    w2s_[i] = w.w2_scaled;
  }
}

void KernelEvaluator::scaled_weights(double r, double& w1s, double& w2s) const {
  const int n = static_cast<int>(w1s_.size());
  if (r > opts_.table_rmax) {
    const Weights w = direct_weights(r, 2 * opts_.theta_nodes);
    w1s = w.w1_scaled;
    w2s = w.w2_scaled;
    return;
  }
  // Four-point Lagrange; the weights are even in r, so reflect below zero.
  const double s = r / table_h_;
  int i0 = static_cast<int>(std::floor(s)) - 1;
  i0 = std::min(i0, n - 4);
  const double t = s - i0;
  double c[4];
  c[0] = -(t - 1) * (t - 2) * (t - 3) / 6.0;
  c[1] = t * (t - 2) * (t - 3) / 2.0;
  c[2] = -t * (t - 1) * (t - 3) / 2.0;
  c[3] = t * (t - 1) * (t - 2) / 6.0;
  w1s = w2s = 0.0;
  for (int k = 0; k < 4; ++k) {
    const int idx = std::abs(i0 + k);
    w1s += c[k] * w1s_[idx];
    w2s += c[k] * w2s_[idx];
  }
}

double KernelEvaluator::table_max_rel_error() const {
  double worst = 0.0;
  const int n = static_cast<int>(w1s_.size());
  for (int i = 0; i + 1 < n; ++i) {
    const double r = (i + 0.5) * table_h_;
    double a1 = 0.0;
    double a2 = 0.0;
    scaled_weights(r, a1, a2);
    const Weights w = direct_weights(r, 2 * opts_.theta_nodes);
    worst = std::max({worst, std::abs(a1 / w.w1_scaled - 1.0), std::abs(a2 / w.w2_scaled - 1.0)});
  }
  return worst;
}

// --- kernel -----------------------------------------------------------------

namespace {

Mat3 combine(const RelVelFrame& fr, const Vec3& v, double w1, double w2) {
  const XiPair xi = xi_matrices(fr, v);
  if (xi.degenerate) {
    // w1 = w2 + O(|v_R|^2): the split is irrelevant.
    return 0.5 * (w1 + w2) * (Mat3::Identity() - fr.u_hat * fr.u_hat.transpose());
  }
  return w1 * xi.xi1 + w2 * xi.xi2;
}

}  // namespace

KernelMatrix KernelEvaluator::kernel_B(const Vec3& v, const Vec3& vstar) const {
  KernelMatrix out;
  out.frame = make_frame(v, vstar);
  const Weights w = direct_weights(out.frame.v_R_mag, 2 * opts_.theta_nodes);
  out.b_scaled = combine(out.frame, v, w.w1_scaled, w.w2_scaled) / out.frame.u_mag;
  out.b = combine(out.frame, v, w.w1, w.w2) / out.frame.u_mag;
  return out;
}

Mat3 KernelEvaluator::kernel_B_sqrt_mumu_times_u(const RelVelFrame& fr, const Vec3& v) const {
  double w1s = 0.0;
  double w2s = 0.0;
  scaled_weights(fr.v_R_mag, w1s, w2s);
  // sqrt(mu mu*) exp(|v_R|^2/2) = (2 pi)^{-3/2} exp(-(v_par^2 + vstar_par^2)/4).
  const double fuse = kInvTwoPi32 * std::exp(-0.25 * (fr.v_par * fr.v_par + fr.vstar_par * fr.vstar_par));
  return fuse * combine(fr, v, w1s, w2s);
}

Mat3 KernelEvaluator::kernel_B_times_sqrt_mumu(const Vec3& v, const Vec3& vstar) const {
  const RelVelFrame fr = make_frame(v, vstar);
  return kernel_B_sqrt_mumu_times_u(fr, v) / fr.u_mag;
}

Mat3 landau_kernel(const Vec3& v, const Vec3& vstar, double L_const) {
  const Vec3 u = v - vstar;
  const double um = u.norm();
  if (!(um > 0.0)) throw Error(ErrorCode::singularity, "landau_kernel: v == v*");
  const Vec3 uh = u / um;
  return (L_const / um) * (Mat3::Identity() - uh * uh.transpose());
}

}  // namespace balescu
