#pragma once

#include <functional>
#include <vector>

#include "balescu/frequency.hpp"
#include "balescu/kernel.hpp"
#include "balescu/radial.hpp"

namespace balescu {

/// Values on the uniform n^3 grid covering [-r_max, r_max]^3 (n odd, so the
/// origin is a node).
struct GridFunction3D {
  int n = 15;
  double r_max = 8.0;
  std::vector<double> values;

  GridFunction3D() = default;
  GridFunction3D(int n, double r_max);  // zero-filled; Error(domain) unless n odd >= 5

  double spacing() const { return 2.0 * r_max / (n - 1); }
  double coord(int i) const { return -r_max + i * spacing(); }
  Vec3 node(int i, int j, int k) const { return Vec3(coord(i), coord(j), coord(k)); }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n + j) * n + k;
  }
  double cell_volume() const { return spacing() * spacing() * spacing(); }

  static GridFunction3D sample(int n, double r_max, const std::function<double(const Vec3&)>& f);
};

double inner_3d(const GridFunction3D& a, const GridFunction3D& b);

/// Orthogonal projection onto span{sqrt(mu), v sqrt(mu), |v|^2 sqrt(mu)} in the
/// discrete inner product (modified Gram-Schmidt basis).
GridFunction3D project_P_3d(const GridFunction3D& g);

/// sum_ij int w^2 sigma^ij (d_i g d_j g + (v_i/2)(v_j/2) g^2) dv with central
/// differences (one-sided at the faces of the cube) and nodal quadrature.
double norm_sigma_3d(const GridFunction3D& g, const CollisionFrequency& freq,
                     const WeightParams* params = nullptr);

/// Spherical-in-u rule for the inner v* integrals.
struct InnerRule {
  int u_nodes = 16;         // Gauss-Legendre nodes per panel
  double panel_length = 3.0;
  double u_reach = 10.0;    // integrate u in [0, |v| + u_reach]
  int polar_nodes = 16;
  int azimuth_nodes = 32;
};

/// H(v) = int B(v, v - v*) sqrt(mu mu*) Dg(v*) dv* for a vector field Dg
/// (returned Zero where it vanishes).
Vec3 inner_kernel_field(const KernelEvaluator& kernel, const Vec3& v,
                        const std::function<Vec3(const Vec3&)>& Dg, const InnerRule& rule);

/// <L g1, g2> = int sigma Dg1 . Dg2 dv - int int B sqrt(mu mu*) Dg1(v*) . Dg2(v) dv* dv,
/// with D = grad + v/2 taken as sqrt(mu) grad(g / sqrt(mu)). Outer sum over
/// the nodes, inner integral by inner_kernel_field with D g1 interpolated
/// (tricubic) between nodes. Error(budget) for n > 17.
double quadratic_form_L_3d(const GridFunction3D& g1, const GridFunction3D& g2,
                           const KernelEvaluator& kernel, const CollisionFrequency& freq,
                           const InnerRule& rule = {});

/// Pointwise K g for a radial g given analytically (g and g'):
/// K g = -(div H - v . H / 2) with H = inner_kernel_field of
/// Dg = (g' + r g / 2) v_hat, the divergence by centred differences of
/// step `delta`.
double apply_K_3d_point(const KernelEvaluator& kernel, const Vec3& v,
                        const std::function<double(double)>& g,
                        const std::function<double(double)>& dg, const InnerRule& rule,
                        double delta = 0.02);

struct RadialVs3D {
  double rel_l2 = 0.0;
  int nodes = 0;
};

/// Compares the radial operator's K on g with apply_K_3d_point on the n^3
/// grid nodes (|v| <= r_max of the radial grid), using octant symmetry.
RadialVs3D compare_K_radial_3d(const RadialOperator& op, const KernelEvaluator& kernel,
                               const std::function<double(double)>& g,
                               const std::function<double(double)>& dg, int n,
                               const InnerRule& rule = {});

}  // namespace balescu
