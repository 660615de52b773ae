#include "balescu/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "balescu/error.hpp"
#include "balescu/kernel.hpp"
#include "balescu/quadrature.hpp"

namespace balescu {

namespace {

const double kSqrtPiOver2 = std::sqrt(std::numbers::pi / 2.0);
const double kSqrtPiOver8 = std::sqrt(std::numbers::pi / 8.0);
constexpr int kPanelNodes = 20;

// Table nodes: fine where exp(-y^2/2) J(y) has its hump, coarser in the
// y^-3 tail.
std::vector<double> make_grid(double rmax) {
  std::vector<double> g;
  double y = 0.0;
  while (y < rmax) {
    g.push_back(y);
    y += (y < 8.0) ? 0.0625 : (y < 32.0 ? 0.25 : 1.0);
  }
  g.push_back(rmax);
  return g;
}

}  // namespace

CollisionFrequency::CollisionFrequency(const PlasmaConfig& cfg)
    : CollisionFrequency(cfg, Options{}) {}

CollisionFrequency::CollisionFrequency(const PlasmaConfig& cfg, const Options& opts)
    : cfg_(cfg), opts_(opts) {
  cfg_.validate();
  if (!(opts_.table_rmax > 8.0) || !(opts_.small_r > 0.0))
    throw Error(ErrorCode::domain, "CollisionFrequency: invalid options");

  grid_ = make_grid(opts_.table_rmax);
  I0_.assign(grid_.size(), 0.0);
  I2_.assign(grid_.size(), 0.0);
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    const double a = grid_[i - 1];
    const double b = grid_[i];
    I0_[i] = I0_[i - 1] + quad::fixed([&](double y) { return jay_scaled(y, cfg_); }, a, b, kPanelNodes);
    I2_[i] = I2_[i - 1] +
             quad::fixed([&](double y) { return y * y * jay_scaled(y, cfg_); }, a, b, kPanelNodes);
  }

  // Even expansion exp(-y^2/2) J(y) = jt0 + jt2 y^2 + ..., second
  // coefficient by Richardson-extrapolated difference quotients.
  jt0_ = jay_scaled(0.0, cfg_);
  const auto quotient = [&](double h) { return (jay_scaled(h, cfg_) - jt0_) / (h * h); };
  const double hq = 0.02;
  jt2_ = (4.0 * quotient(0.5 * hq) - quotient(hq)) / 3.0;

  const double tail = quad::adaptive([&](double y) { return jay_scaled(y, cfg_); }, opts_.table_rmax,
                                     std::numeric_limits<double>::infinity(), cfg_.quad_rel_tol,
                                     cfg_.quad_abs_tol)
                          .value;
  c2_ = kSqrtPiOver8 * (I0_.back() + tail);
}

double CollisionFrequency::cumulative(double r, int moment) const {
  if (!(r >= 0.0)) throw Error(ErrorCode::domain, "cumulative integral needs r >= 0");
  const std::vector<double>& table = moment == 0 ? I0_ : I2_;
  const auto f = [&](double y) { return (moment == 0 ? 1.0 : y * y) * jay_scaled(y, cfg_); };
  if (r >= grid_.back()) {
    if (r == grid_.back()) return table.back();
    return table.back() +
           quad::adaptive(f, grid_.back(), r, cfg_.quad_rel_tol, cfg_.quad_abs_tol).value;
  }
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), r);
  const std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
  if (r == grid_[i]) return table[i];
  return table[i] + quad::fixed(f, grid_[i], r, kPanelNodes);
}

double CollisionFrequency::I0(double r) const { return cumulative(r, 0); }
double CollisionFrequency::I2(double r) const { return cumulative(r, 2); }

EigenvaluePair CollisionFrequency::lambda_pair(double r) const {
  if (!(r >= 0.0)) throw Error(ErrorCode::domain, "lambda_pair: r must be >= 0");
  EigenvaluePair out;
  out.r = r;
  if (r < opts_.small_r) {
    const double r2 = r * r;
    out.lambda1 = kSqrtPiOver2 * (jt0_ / 3.0 + jt2_ * r2 / 5.0);
    out.lambda2 = kSqrtPiOver2 * (jt0_ / 3.0 + jt2_ * r2 / 15.0);
    return out;
  }
  const double i0 = I0(r);
  const double i2 = I2(r);
  out.lambda1 = kSqrtPiOver2 * i2 / (r * r * r);
  out.lambda2 = kSqrtPiOver8 * (i0 - i2 / (r * r)) / r;
  return out;
}

EigenvalueDerivatives CollisionFrequency::lambda_derivatives(double r) const {
  if (!(r > 0.0)) throw Error(ErrorCode::domain, "lambda_derivatives: r must be > 0");
  EigenvalueDerivatives out;
  if (r < opts_.small_r) {
    out.dlambda1 = kSqrtPiOver2 * 2.0 * jt2_ * r / 5.0;
    out.dlambda2 = kSqrtPiOver2 * 2.0 * jt2_ * r / 15.0;
    return out;
  }
  const double i0 = I0(r);
  const double i2 = I2(r);
  const double r2 = r * r;
  const double r4 = r2 * r2;
  out.dlambda1 = kSqrtPiOver2 * (-3.0 * i2 / r4 + jay_scaled(r, cfg_) / r);
  // The exp(-r^2/2) J(r) contributions cancel in lambda2'.
  out.dlambda2 = kSqrtPiOver8 * (-i0 / r2 + 3.0 * i2 / r4);
  return out;
}

Mat3 CollisionFrequency::sigma_matrix(const Vec3& v) const {
  const double r = v.norm();
  const EigenvaluePair lp = lambda_pair(r);
  if (r == 0.0) return lp.lambda1 * Mat3::Identity();
  const Vec3 vh = v / r;
  const Mat3 pv = vh * vh.transpose();
  return lp.lambda1 * pv + lp.lambda2 * (Mat3::Identity() - pv);
}

CollisionFrequency::VecDiv CollisionFrequency::sigma_vec_and_div(const Vec3& v) const {
  const double r = v.norm();
  const EigenvaluePair lp = lambda_pair(r);
  VecDiv out;
  out.sigma_i = 0.5 * lp.lambda1 * v;
  const double rdl = r > 0.0 ? r * lambda_derivatives(r).dlambda1 : 0.0;
  out.div = 0.5 * (3.0 * lp.lambda1 + rdl);
  return out;
}

Mat3 sigma_k_oracle(const Vec3& v, const PlasmaConfig& cfg, int polar_nodes, int azimuth_nodes) {
  if (!(v.norm() <= 10.0)) throw Error(ErrorCode::domain, "sigma_k_oracle: |v| <= 10 required");
  if (polar_nodes < 2 || azimuth_nodes < 3)
    throw Error(ErrorCode::domain, "sigma_k_oracle: too few angular nodes");
  // With k = rho k_hat, k k^T / |k|^5 dk = k_hat k_hat^T rho^-1 d rho d Omega and
  // 1 / |eps|^2 = rho^4 / |rho^2 + Psi|^2, so the rho integral is J(k_hat . v) / 4.
  const quad::Rule& rule = quad::gauss_legendre(polar_nodes);
  const double dphi = 2.0 * std::numbers::pi / azimuth_nodes;
  Mat3 acc = Mat3::Zero();
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double ct = rule.nodes[i];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int j = 0; j < azimuth_nodes; ++j) {
      const double phi = (j + 0.5) * dphi;
      const Vec3 kh(st * std::cos(phi), st * std::sin(phi), ct);
      const double x = kh.dot(v);
      const double radial = 0.25 * std::exp(-0.5 * x * x) * jay_oracle(x, cfg);
      acc += (rule.weights[i] * dphi * radial) * (kh * kh.transpose());
    }
  }
  return acc / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace balescu
