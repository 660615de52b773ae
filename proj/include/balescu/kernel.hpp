#pragma once

#include <vector>

#include "balescu/config.hpp"
#include "balescu/linalg.hpp"

namespace balescu {

// --- J(x): radial wavenumber integral of 1/|eps|^2 ------------------------

/// Closed form of J. |x| <= 25, otherwise Error(overflow_guard).
double jay(double x, const PlasmaConfig& cfg = {});

/// exp(-x^2/2) J(x), finite for every x.
double jay_scaled(double x, const PlasmaConfig& cfg = {});

/// Adaptive quadrature of int_0^k0 4 rho^3 / ((rho^2 + Psi_R)^2 + Psi_I^2) d rho.
double jay_oracle(double x, const PlasmaConfig& cfg = {});

// --- geometry -----------------------------------------------------------

/// Frame attached to a pair (v, v*): u = v - v*, the component of v along u
/// and the perpendicular speed |v_R|.
struct RelVelFrame {
  Vec3 u;
  Vec3 u_hat;
  double u_mag = 0.0;
  double v_par = 0.0;      // u_hat . v
  double vstar_par = 0.0;  // u_hat . v*
  double v_R_mag = 0.0;
  Vec3 plane1;  // (plane1, plane2, u_hat) right-handed orthonormal
  Vec3 plane2;
};

/// Throws Error(singularity) when v == v*.
RelVelFrame make_frame(const Vec3& v, const Vec3& vstar);

struct XiPair {
  Mat3 xi1 = Mat3::Zero();
  Mat3 xi2 = Mat3::Zero();
  bool degenerate = false;  // |v_R| < singular_tol; xi1, xi2 not defined
};

inline constexpr double kSingularTol = 1e-8;

/// Rank-one projections splitting I - u_hat u_hat^T along / across v_R.
XiPair xi_matrices(const RelVelFrame& frame, const Vec3& v);

// --- weights ------------------------------------------------------------

struct Weights {
  double w1 = 0.0;
  double w2 = 0.0;
  double w1_scaled = 0.0;  // exp(-r^2/2) w1
  double w2_scaled = 0.0;
};

struct KernelMatrix {
  Mat3 b = Mat3::Zero();
  Mat3 b_scaled = Mat3::Zero();  // exp(-|v_R|^2/2) b
  RelVelFrame frame;
};

/// Collision kernel B(v, v - v*) at the Maxwellian. Owns a tabulation of the
/// scaled weights used by every hot loop; the table is immutable after
/// construction.
class KernelEvaluator {
 public:
  struct Options {
    int theta_nodes = 64;     // Gauss-Legendre nodes for the theta integral
    int table_points = 400;   // uniform grid on [0, table_rmax]
    double table_rmax = 11.5;  // covers |v_R| <= sqrt(2) r_max at r_max = 8
  };

  explicit KernelEvaluator(const PlasmaConfig& cfg);
  KernelEvaluator(const PlasmaConfig& cfg, const Options& opts);

  const PlasmaConfig& config() const { return cfg_; }
  const Options& options() const { return opts_; }

  /// Direct theta quadrature; the doubled-order rule must agree to the
  /// quadrature tolerance or Error(tolerance) is thrown. Unscaled weights
  /// are +inf when exp(r^2/2) overflows.
  Weights weights(double v_R_mag) const;

  /// Scaled weights from the table (cubic interpolation); falls back to
  /// direct quadrature beyond table_rmax.
  void scaled_weights(double v_R_mag, double& w1_scaled, double& w2_scaled) const;

  /// Max relative deviation of the table from direct quadrature at the
  /// midpoints between table nodes.
  double table_max_rel_error() const;

  KernelMatrix kernel_B(const Vec3& v, const Vec3& vstar) const;

  /// B(v, v - v*) sqrt(mu(v) mu(v*)) with the exponentials fused.
  Mat3 kernel_B_times_sqrt_mumu(const Vec3& v, const Vec3& vstar) const;

  /// Same as above for a frame already built; multiplied by |u| so that the
  /// 1/|u| singularity is removed (used under the |u|^2 du Jacobian).
  Mat3 kernel_B_sqrt_mumu_times_u(const RelVelFrame& frame, const Vec3& v) const;

 private:
  Weights direct_weights(double r, int nodes) const;
  void build_table();

  PlasmaConfig cfg_;
  Options opts_;
  double table_h_ = 0.0;
  std::vector<double> w1s_;
  std::vector<double> w2s_;
};

/// Landau kernel (L / |u|) (I - u_hat u_hat^T).
Mat3 landau_kernel(const Vec3& v, const Vec3& vstar, double L_const);

}  // namespace balescu
