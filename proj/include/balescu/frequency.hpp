#pragma once

#include <vector>

#include "balescu/config.hpp"
#include "balescu/linalg.hpp"

namespace balescu {

struct EigenvaluePair {
  double r = 0.0;
  double lambda1 = 0.0;  // along v
  double lambda2 = 0.0;  // double eigenvalue across v
};

struct EigenvalueDerivatives {
  double dlambda1 = 0.0;
  double dlambda2 = 0.0;
};

/// Collision frequency sigma(v) through its radial eigenvalues
///   lambda1(r) = sqrt(pi/2) r^-3 I2(r),
///   lambda2(r) = sqrt(pi/8) r^-1 (I0(r) - r^-2 I2(r)),
/// with I_m(r) = int_0^r y^m exp(-y^2/2) J(y) dy. The cumulative integrals
/// are tabulated once; values between nodes are completed by a short
/// Gauss-Legendre panel so no interpolation error enters.
class CollisionFrequency {
 public:
  struct Options {
    double table_rmax = 128.0;
    double small_r = 1e-3;  // Taylor branch below this radius
  };

  explicit CollisionFrequency(const PlasmaConfig& cfg);
  CollisionFrequency(const PlasmaConfig& cfg, const Options& opts);

  const PlasmaConfig& config() const { return cfg_; }

  double I0(double r) const;
  double I2(double r) const;

  EigenvaluePair lambda_pair(double r) const;
  /// Throws Error(domain) for r <= 0.
  EigenvalueDerivatives lambda_derivatives(double r) const;

  Mat3 sigma_matrix(const Vec3& v) const;

  struct VecDiv {
    Vec3 sigma_i = Vec3::Zero();  // sigma(v) v / 2
    double div = 0.0;             // d_i sigma^i
  };
  VecDiv sigma_vec_and_div(const Vec3& v) const;

  /// sqrt(pi/8) int_0^inf exp(-y^2/2) J(y) dy: the limit of r lambda2(r).
  double lambda2_asymptotic_constant() const { return c2_; }

  /// Table access (read-only), for reports.
  const std::vector<double>& radial_grid() const { return grid_; }
  const std::vector<double>& I0_table() const { return I0_; }
  const std::vector<double>& I2_table() const { return I2_; }

 private:
  double cumulative(double r, int moment) const;

  PlasmaConfig cfg_;
  Options opts_;
  std::vector<double> grid_;
  std::vector<double> I0_;
  std::vector<double> I2_;
  double jt0_ = 0.0;  // exp(-y^2/2) J(y) = jt0 + jt2 y^2 + O(y^4)
  double jt2_ = 0.0;
  double c2_ = 0.0;
};

/// Direct quadrature of sigma^{ij} over the k-ball: the angular integral on
/// a Gauss-Legendre x trapezoid sphere rule, the wavenumber integral by the
/// quadrature oracle of J. |v| <= 10.
Mat3 sigma_k_oracle(const Vec3& v, const PlasmaConfig& cfg = {}, int polar_nodes = 48,
                    int azimuth_nodes = 48);

}  // namespace balescu
