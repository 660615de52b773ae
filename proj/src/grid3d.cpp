#include "balescu/grid3d.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "balescu/error.hpp"
#include "balescu/quadrature.hpp"

namespace balescu {

namespace {

const double kSqrtMu0 = std::pow(2.0 * std::numbers::pi, -0.75);

double sqrt_mu(const Vec3& v) { return kSqrtMu0 * std::exp(-0.25 * v.squaredNorm()); }

std::array<double, 4> lagrange4(double t) {
  return {-(t - 1) * (t - 2) * (t - 3) / 6.0, t * (t - 2) * (t - 3) / 2.0,
          -t * (t - 1) * (t - 3) / 2.0, t * (t - 1) * (t - 2) / 6.0};
}

// grad(g / sqrt(mu)) on the nodes; second-order one-sided at the cube faces,
// so quadratics in v are differentiated exactly.
struct PhiGradient {
  int n = 0;
  double r_max = 0.0;
  double d = 0.0;
  std::vector<Vec3> grad;

  explicit PhiGradient(const GridFunction3D& g) : n(g.n), r_max(g.r_max), d(g.spacing()) {
    std::vector<double> phi(g.values.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const std::size_t id = g.index(i, j, k);
          phi[id] = g.values[id] / sqrt_mu(g.node(i, j, k));
        }
    grad.assign(phi.size(), Vec3::Zero());
    const auto diff = [&](int i, int j, int k, int axis) {
      int idx[3] = {i, j, k};
      const auto at = [&](int shift) {
        int c[3] = {idx[0], idx[1], idx[2]};
        c[axis] += shift;
        return phi[g.index(c[0], c[1], c[2])];
      };
      const int p = idx[axis];
      if (p == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * d);
      if (p == n - 1) return (3.0 * at(0) - 4.0 * at(-1) + at(-2)) / (2.0 * d);
      return (at(1) - at(-1)) / (2.0 * d);
    };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          grad[g.index(i, j, k)] = Vec3(diff(i, j, k, 0), diff(i, j, k, 1), diff(i, j, k, 2));
  }

  // Tricubic Lagrange interpolation; zero outside the cube.
  Vec3 at(const Vec3& p) const {
    int base[3];
    std::array<double, 4> w[3];
    for (int a = 0; a < 3; ++a) {
      if (std::abs(p[a]) > r_max) return Vec3::Zero();
      const double s = (p[a] + r_max) / d;
      int i0 = static_cast<int>(std::floor(s)) - 1;
      i0 = std::clamp(i0, 0, n - 4);
      base[a] = i0;
      w[a] = lagrange4(s - i0);
    }
    Vec3 out = Vec3::Zero();
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const double wab = w[0][a] * w[1][b];
        for (int c = 0; c < 4; ++c)
          out += (wab * w[2][c]) *
                 grad[(static_cast<std::size_t>(base[0] + a) * n + base[1] + b) * n + base[2] + c];
      }
    return out;
  }
};

}  // namespace

GridFunction3D::GridFunction3D(int n_, double r_max_) : n(n_), r_max(r_max_) {
  if (n < 5 || n % 2 == 0) throw Error(ErrorCode::domain, "3-D grid needs odd n >= 5");
  if (!(r_max > 0.0)) throw Error(ErrorCode::domain, "3-D grid needs r_max > 0");
  values.assign(static_cast<std::size_t>(n) * n * n, 0.0);
}

GridFunction3D GridFunction3D::sample(int n, double r_max, const std::function<double(const Vec3&)>& f) {
  GridFunction3D g(n, r_max);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) g.values[g.index(i, j, k)] = f(g.node(i, j, k));
  return g;
}

double inner_3d(const GridFunction3D& a, const GridFunction3D& b) {
  if (a.n != b.n || a.r_max != b.r_max) throw Error(ErrorCode::input, "inner_3d: grids differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * b.values[i];
  return s * a.cell_volume();
}

GridFunction3D project_P_3d(const GridFunction3D& g) {
  std::vector<GridFunction3D> basis;
  const std::function<double(const Vec3&)> gens[5] = {
      [](const Vec3& v) { return sqrt_mu(v); },
      [](const Vec3& v) { return v[0] * sqrt_mu(v); },
      [](const Vec3& v) { return v[1] * sqrt_mu(v); },
      [](const Vec3& v) { return v[2] * sqrt_mu(v); },
      [](const Vec3& v) { return v.squaredNorm() * sqrt_mu(v); },
  };
  for (const auto& gen : gens) {
    GridFunction3D e = GridFunction3D::sample(g.n, g.r_max, gen);
    for (const GridFunction3D& q : basis) {
      const double c = inner_3d(q, e);
      for (std::size_t i = 0; i < e.values.size(); ++i) e.values[i] -= c * q.values[i];
    }
    const double nrm = std::sqrt(inner_3d(e, e));
    for (double& x : e.values) x /= nrm;
    basis.push_back(std::move(e));
  }
  GridFunction3D out(g.n, g.r_max);
  for (const GridFunction3D& q : basis) {
    const double c = inner_3d(q, g);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += c * q.values[i];
  }
  return out;
}

double norm_sigma_3d(const GridFunction3D& g, const CollisionFrequency& freq, const WeightParams* params) {
  const int n = g.n;
  const double d = g.spacing();
  const auto val = [&](int i, int j, int k) { return g.values[g.index(i, j, k)]; };
  const auto partial = [&](int i, int j, int k, int axis) {
    int c[3] = {i, j, k};
    const auto at = [&](int shift) {
      int e[3] = {c[0], c[1], c[2]};
      e[axis] += shift;
      return val(e[0], e[1], e[2]);
    };
    if (c[axis] == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * d);
    if (c[axis] == n - 1) return (3.0 * at(0) - 4.0 * at(-1) + at(-2)) / (2.0 * d);
    return (at(1) - at(-1)) / (2.0 * d);
  };
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Vec3 v = g.node(i, j, k);
        const Vec3 grad(partial(i, j, k, 0), partial(i, j, k, 1), partial(i, j, k, 2));
        const Vec3 vg = 0.5 * val(i, j, k) * v;
        const Mat3 sig = freq.sigma_matrix(v);
        const double w = params ? weight_w(*params, v) : 1.0;
        s += w * w * (grad.dot(sig * grad) + vg.dot(sig * vg));
      }
  return s * g.cell_volume();
}

Vec3 inner_kernel_field(const KernelEvaluator& kernel, const Vec3& v,
                        const std::function<Vec3(const Vec3&)>& Dg, const InnerRule& rule) {
  const quad::Rule& ur = quad::gauss_legendre(rule.u_nodes);
  const quad::Rule& cr = quad::gauss_legendre(rule.polar_nodes);
  const double umax = v.norm() + rule.u_reach;
  const int panels = std::max(1, static_cast<int>(std::ceil(umax / rule.panel_length)));
  const double pw = umax / panels;
  const double dphi = 2.0 * std::numbers::pi / rule.azimuth_nodes;
  std::vector<double> cphi(rule.azimuth_nodes);
  std::vector<double> sphi(rule.azimuth_nodes);
  for (int m = 0; m < rule.azimuth_nodes; ++m) {
    cphi[m] = std::cos((m + 0.5) * dphi);
    sphi[m] = std::sin((m + 0.5) * dphi);
  }
  Vec3 acc = Vec3::Zero();
  for (int p = 0; p < panels; ++p) {
    for (std::size_t a = 0; a < ur.size(); ++a) {
      const double u = pw * (p + 0.5 * (1.0 + ur.nodes[a]));
      const double wu = 0.5 * pw * ur.weights[a] * u;  // u^2 du / |u|
      for (std::size_t b = 0; b < cr.size(); ++b) {
        const double c = cr.nodes[b];
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        const double wub = wu * cr.weights[b] * dphi;
        for (int m = 0; m < rule.azimuth_nodes; ++m) {
          const Vec3 uvec(u * s * cphi[m], u * s * sphi[m], u * c);
          const Vec3 vstar = v - uvec;
          const Vec3 dg = Dg(vstar);
          if (dg.squaredNorm() == 0.0) continue;
          const RelVelFrame fr = make_frame(v, vstar);
          acc += wub * (kernel.kernel_B_sqrt_mumu_times_u(fr, v) * dg);
        }
      }
    }
  }
  return acc;
}

double quadratic_form_L_3d(const GridFunction3D& g1, const GridFunction3D& g2, const KernelEvaluator& kernel,
                           const CollisionFrequency& freq, const InnerRule& rule) {
  if (g1.n != g2.n || g1.r_max != g2.r_max) throw Error(ErrorCode::input, "quadratic_form_L_3d: grids differ");
  if (g1.n > 17)
    throw Error(ErrorCode::budget, "quadratic_form_L_3d: n > 17 exceeds the supported 6-D quadrature size");
  const PhiGradient p1(g1);
  const PhiGradient p2(g2);
  const auto D1 = [&](const Vec3& w) -> Vec3 {
    const Vec3 gp = p1.at(w);
    if (gp.squaredNorm() == 0.0) return gp;
    return sqrt_mu(w) * gp;
  };
  const int n = g1.n;
  double biggest = 0.0;
  for (std::size_t i = 0; i < p2.grad.size(); ++i) biggest = std::max(biggest, p2.grad[i].norm());

  double local = 0.0;
  double nonlocal = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Vec3 v = g1.node(i, j, k);
        const std::size_t id = g1.index(i, j, k);
        const double sm = sqrt_mu(v);
        const Vec3 d2 = sm * p2.grad[id];
        if (d2.norm() <= 1e-14 * biggest * kSqrtMu0) continue;
        const Vec3 d1 = sm * p1.grad[id];
        local += d2.dot(freq.sigma_matrix(v) * d1);
        nonlocal += d2.dot(inner_kernel_field(kernel, v, D1, rule));
      }
  return (local - nonlocal) * g1.cell_volume();
}

double apply_K_3d_point(const KernelEvaluator& kernel, const Vec3& v, const std::function<double(double)>& g,
                        const std::function<double(double)>& dg, const InnerRule& rule, double delta) {
  const auto D = [&](const Vec3& w) -> Vec3 {
    const double r = w.norm();
    if (r == 0.0) return Vec3::Zero();
    return (dg(r) + 0.5 * r * g(r)) / r * w;
  };
  const Vec3 H = inner_kernel_field(kernel, v, D, rule);
  double div = 0.0;
  for (int a = 0; a < 3; ++a) {
    Vec3 e = Vec3::Zero();
    e[a] = delta;
    div += (inner_kernel_field(kernel, v + e, D, rule)[a] - inner_kernel_field(kernel, v - e, D, rule)[a]) /
           (2.0 * delta);
  }
  return -(div - 0.5 * v.dot(H));
}

RadialVs3D compare_K_radial_3d(const RadialOperator& op, const KernelEvaluator& kernel,
                               const std::function<double(double)>& g, const std::function<double(double)>& dg,
                               int n, const InnerRule& rule) {
  const RadialGrid& grid = op.grid();
  const Vector Kr = op.apply_K(RadialFunction::sample(grid, g).values);
  // Cubic interpolation between cell centres, even reflection at 0.
  const auto radial_at = [&](double r) {
    const double s = r / grid.h - 0.5;
    int i0 = static_cast<int>(std::floor(s)) - 1;
    i0 = std::min(i0, grid.M - 4);
    const std::array<double, 4> w = lagrange4(s - i0);
    double out = 0.0;
    for (int k = 0; k < 4; ++k) {
      int idx = i0 + k;
      if (idx < 0) idx = -idx - 1;
      out += w[k] * Kr[idx];
    }
    return out;
  };

  GridFunction3D probe(n, grid.r_max);
  const int mid = n / 2;
  const double rlim = grid.r.back();
  double num = 0.0;
  double den = 0.0;
  RadialVs3D res;
  for (int i = mid; i < n; ++i)
    for (int j = mid; j < n; ++j)
      for (int k = mid; k < n; ++k) {
        const Vec3 v = probe.node(i, j, k);
        if (v.norm() > rlim) continue;
        const double mult = (i == mid ? 1.0 : 2.0) * (j == mid ? 1.0 : 2.0) * (k == mid ? 1.0 : 2.0);
        const double k3 = apply_K_3d_point(kernel, v, g, dg, rule);
        const double kr = radial_at(v.norm());
        num += mult * (k3 - kr) * (k3 - kr);
        den += mult * k3 * k3;
        ++res.nodes;
      }
  res.rel_l2 = std::sqrt(num / den);
  return res;
}

}  // namespace balescu
