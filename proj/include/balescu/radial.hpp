#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "balescu/frequency.hpp"
#include "balescu/kernel.hpp"

namespace balescu {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Normalized Maxwellian (2 pi)^{-3/2} exp(-|v|^2 / 2).
double maxwellian(double r);
double maxwellian(const Vec3& v);

/// Velocity weight (1 + |v|^2)^{ell/2} exp((q/4) (1 + |v|^2)^{theta/2}).
struct WeightParams {
  double ell = 0.0;
  double theta = 0.0;
  double q = 1.0;
  void validate() const;  // Error(domain) on violation
};
double weight_w(const WeightParams& p, double r);
inline double weight_w(const WeightParams& p, const Vec3& v) { return weight_w(p, v.norm()); }

struct MomentVector {
  double mass = 0.0;
  Vec3 momentum = Vec3::Zero();
  double energy = 0.0;
};

/// Cell-centred radial grid r_k = (k - 1/2) h, k = 1..M, h = r_max / M.
/// Faces sit at f h, f = 1..M. Even reflection at the origin, zero beyond r_max.
struct RadialGrid {
  int M = 160;
  double r_max = 8.0;
  double h = 0.0;
  std::vector<double> r;      // nodes
  std::vector<double> faces;  // f h, f = 1..M
  std::vector<double> vol;    // shell volume 4 pi h (r_k^2 + h^2/12)
  std::vector<double> face_vol;  // 4 pi r_f^2 h

  RadialGrid() = default;
  RadialGrid(int M, double r_max);
};

struct RadialFunction {
  RadialGrid grid;
  Vector values;

  static RadialFunction sample(const RadialGrid& grid, const std::function<double(double)>& f);
};

/// Linearized operator L = -A - K restricted to radial perturbations.
///
/// Both pieces are assembled in weak (flux) form on the face grid. With
/// gamma = (d/dr + r/2) g evaluated on faces,
///   <-A g1, g2> = sum_f |face| lambda1(r_f) gamma1_f gamma2_f,
///   < K g1, g2> = sum_f |face| H[g1]_f gamma2_f,
/// where H[g](r) = int (v_hat . B sqrt(mu mu*) v_hat*) gamma(r*) dv* is the
/// inner kernel integral at v = r e_z, done in spherical u = v - v*
/// coordinates with gamma interpolated off the face grid.
class RadialOperator {
 public:
  struct Options {
    int M = 160;
    double r_max = 8.0;
    // Inner integral over u = v - v* on [0, r + r_max] (|v*| <= r_max).
    // The contracted kernel does not depend on the azimuth of u about v,
    // so only |u| and the polar angle are discretized.
    int u_radial_nodes = 24;  // Gauss-Legendre per panel
    int u_panels = 1;
    int u_polar_nodes = 16;
    // Zero flux through r_max by default; a zero ghost value instead leaves
    // a boundary term of size g(r_max) / h^2 that grows under refinement.
    bool dirichlet_outer = false;
  };

  RadialOperator(const KernelEvaluator& kernel, const CollisionFrequency& freq);
  RadialOperator(const KernelEvaluator& kernel, const CollisionFrequency& freq,
                 const Options& opts);

  const RadialGrid& grid() const { return grid_; }
  const Options& options() const { return opts_; }
  const CollisionFrequency& frequency() const { return *freq_; }

  Vector apply_A(const Vector& g) const;
  Vector apply_K(const Vector& g) const;
  Vector apply_L(const Vector& g) const;

  /// Face values of (d/dr + r/2) g.
  Vector gamma(const Vector& g) const;
  /// H[g] at the faces (the inner K integral after the Maxwellian fusion).
  Vector inner_K_field(const Vector& g) const;

  double inner(const Vector& a, const Vector& b) const;
  double norm(const Vector& a) const;
  /// Weighted L2 norm with w(ell, theta); unweighted when params is null.
  double weighted_norm(const Vector& a, const WeightParams* params) const;
  /// |g|_{sigma}^2 = int w^2 lambda1 (g'^2 + r^2 g^2 / 4) dv (radial reduction).
  double norm_sigma_sq(const Vector& g, const WeightParams* params = nullptr) const;
  /// <L g1, g2> from the weak form.
  double bilinear_L(const Vector& g1, const Vector& g2) const;

  /// Orthonormal (discrete) basis of span{sqrt(mu), r^2 sqrt(mu)} and the
  /// projection onto it.
  const Matrix& null_basis() const { return null_basis_; }
  Vector project_P(const Vector& g) const;
  MomentVector moments(const Vector& g) const;

  /// Dense matrices of the discrete operators (M x M).
  const Matrix& L_matrix() const { return L_; }
  /// (I - P) L_sym (I - P): self-adjoint in the discrete inner product and
  /// exactly conservative; the generator used for time stepping.
  const Matrix& L_conservative() const { return L_cons_; }

  double max_lambda() const { return max_lambda_; }
  double stable_dt() const;  // 0.4 h^2 / max(lambda1, lambda2)

 private:
  void assemble(const KernelEvaluator& kernel);

  const CollisionFrequency* freq_;
  Options opts_;
  RadialGrid grid_;
  Matrix G_;            // nodes -> faces, gamma = G g
  Vector lambda_face_;  // lambda1 at faces
  Matrix Q_;            // faces -> faces, H = Q gamma
  Matrix A_, K_, L_, L_cons_;
  Matrix null_basis_;   // M x 2, orthonormal in the discrete inner product
  double max_lambda_ = 0.0;
};

// --- probes and time evolution -------------------------------------------

struct CoercivityReport {
  int samples = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  std::vector<double> ratios;
  std::vector<double> histogram_edges;  // log10-spaced
  std::vector<int> histogram_counts;
};

/// Random smooth radial probes with the null component removed; ratio
/// <L g, g> / |g|_sigma^2 for each.
CoercivityReport coercivity_probe(const RadialOperator& op, int n_samples, std::uint64_t seed);

struct EvolutionSample {
  double t = 0.0;
  MomentVector moments;
  double l2 = 0.0;
  double weighted = 0.0;
  double sigma_norm = 0.0;  // weighted sigma norm
};

struct EvolutionSummary {
  double fitted_p = 0.0;
  double fitted_rate = 0.0;
  double theta_ratio = 0.0;  // theta / (theta + 1)
  double max_mass_drift = 0.0;    // relative to |f0| |sqrt(mu)|
  double max_energy_drift = 0.0;  // relative to |f0| |r^2 sqrt(mu)|
  bool l2_monotone = true;
  bool weighted_monotone = true;
  int steps = 0;
  double dt = 0.0;
};

struct EvolutionResult {
  std::vector<EvolutionSample> series;
  EvolutionSummary summary;
  Vector final_state;
};

/// Named initial data: gaussian_bump, shell, hermite_mode. Null component removed.
Vector initial_preset(const RadialOperator& op, const std::string& name);

/// Classical RK4 on df/dt = -L f with the conservative generator.
/// Error(step_size) if dt exceeds the stability bound, Error(input) if f0
/// carries mass or energy beyond 1e-8 (relative).
EvolutionResult evolve_radial(const RadialOperator& op, const Vector& f0,
                              const WeightParams& params, double dt, double t_end);

/// Least-squares fit of log|f| = a - rate t^p; returns {p, rate}.
std::pair<double, double> fit_stretched_exponential(const std::vector<double>& t,
                                                    const std::vector<double>& norm);

}  // namespace balescu
