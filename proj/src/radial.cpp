#include "balescu/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "balescu/error.hpp"
#include "balescu/quadrature.hpp"

namespace balescu {

namespace {

const double kInvTwoPi32 = std::pow(2.0 * std::numbers::pi, -1.5);
constexpr double kFourPi = 4.0 * std::numbers::pi;

double sqrt_mu(double r) { return std::sqrt(kInvTwoPi32) * std::exp(-0.25 * r * r); }

// Uniform double in [0, 1) from the raw engine output, so probe data does
// not depend on the standard library's distribution implementations.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

double maxwellian(double r) { return kInvTwoPi32 * std::exp(-0.5 * r * r); }
double maxwellian(const Vec3& v) { return maxwellian(v.norm()); }

void WeightParams::validate() const {
  if (!(theta >= 0.0 && theta <= 2.0)) throw Error(ErrorCode::domain, "weight: theta must be in [0, 2]");
  if (!(q > 0.0)) throw Error(ErrorCode::domain, "weight: q must be > 0");
  if (theta == 2.0 && !(q < 1.0)) throw Error(ErrorCode::domain, "weight: theta = 2 requires q < 1");
  if (!std::isfinite(ell)) throw Error(ErrorCode::domain, "weight: ell must be finite");
}

double weight_w(const WeightParams& p, double r) {
  p.validate();
  const double b = 1.0 + r * r;
  return std::pow(b, 0.5 * p.ell) * std::exp(0.25 * p.q * std::pow(b, 0.5 * p.theta));
}

RadialGrid::RadialGrid(int M_, double r_max_) : M(M_), r_max(r_max_) {
  if (M < 8) throw Error(ErrorCode::domain, "radial grid needs M >= 8");
  if (!(r_max > 0.0)) throw Error(ErrorCode::domain, "radial grid needs r_max > 0");
  h = r_max / M;
  r.resize(M);
  faces.resize(M);
  vol.resize(M);
  face_vol.resize(M);
  for (int k = 0; k < M; ++k) {
    r[k] = (k + 0.5) * h;
    faces[k] = (k + 1) * h;
    // Exact shell volumes with face area x h on the faces: the discrete
    // divergence r^-2 (r^2 F)' is then exact for F linear in r, including the
    // first cell (with 4 pi r^2 h there it is off by 4/3).
    vol[k] = kFourPi * h * (r[k] * r[k] + h * h / 12.0);
    face_vol[k] = kFourPi * h * faces[k] * faces[k];
  }
}

RadialFunction RadialFunction::sample(const RadialGrid& grid, const std::function<double(double)>& f) {
  RadialFunction out{grid, Vector(grid.M)};
  for (int k = 0; k < grid.M; ++k) out.values[k] = f(grid.r[k]);
  return out;
}

// --- operator assembly ------------------------------------------------------

RadialOperator::RadialOperator(const KernelEvaluator& kernel, const CollisionFrequency& freq)
    : RadialOperator(kernel, freq, Options{}) {}

RadialOperator::RadialOperator(const KernelEvaluator& kernel, const CollisionFrequency& freq,
                               const Options& opts)
    : freq_(&freq), opts_(opts), grid_(opts.M, opts.r_max) {
  if (opts_.u_radial_nodes < 2 || opts_.u_panels < 1 || opts_.u_polar_nodes < 2)
    throw Error(ErrorCode::domain, "RadialOperator: invalid quadrature options");
  assemble(kernel);
}

void RadialOperator::assemble(const KernelEvaluator& kernel) {
  const int M = grid_.M;
  const double h = grid_.h;

  // gamma_f = (g_{f+1} - g_f) / h + r_f (g_f + g_{f+1}) / 4 on faces.
  G_ = Matrix::Zero(M, M);
  for (int f = 0; f < M; ++f) {
    const double rf = grid_.faces[f];
    G_(f, f) = -1.0 / h + 0.25 * rf;
    if (f + 1 < M) {
      G_(f, f + 1) = 1.0 / h + 0.25 * rf;
    } else if (!opts_.dirichlet_outer) {
      G_(f, f) = 0.0;  // no flux through r_max
    }
  }

  lambda_face_.resize(M);
  max_lambda_ = 0.0;
  for (int f = 0; f < M; ++f) {
    const EigenvaluePair lp = freq_->lambda_pair(grid_.faces[f]);
    lambda_face_[f] = lp.lambda1;
    max_lambda_ = std::max({max_lambda_, lp.lambda1, lp.lambda2});
  }
  max_lambda_ = std::max(max_lambda_, freq_->lambda_pair(0.0).lambda1);

  // H(r_f) = int |u| du dOmega_u  e_z . (|u| B sqrt(mu mu*)) . v_hat*  gamma(|v*|)
  // at v = r_f e_z, v* = v - u. The azimuth integral is a factor 2 pi.
  // gamma between faces: four-point Lagrange on the face grid extended by
  // gamma(0) = 0, odd reflection below 0 and zero past r_max.
  Q_ = Matrix::Zero(M, M);
  const quad::Rule& ur = quad::gauss_legendre(opts_.u_radial_nodes);
  const quad::Rule& cr = quad::gauss_legendre(opts_.u_polar_nodes);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int f = 0; f < M; ++f) {
    const double r = grid_.faces[f];
    const Vec3 v(0.0, 0.0, r);
    const double umax = r + grid_.r_max;
    const double pw = umax / opts_.u_panels;
    for (int p = 0; p < opts_.u_panels; ++p) {
      for (std::size_t a = 0; a < ur.size(); ++a) {
        const double u = pw * (p + 0.5 * (1.0 + ur.nodes[a]));
        const double wu = 0.5 * pw * ur.weights[a];
        for (std::size_t b = 0; b < cr.size(); ++b) {
          const double c = cr.nodes[b];
          const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
          const Vec3 uvec(u * s, 0.0, u * c);
          const Vec3 vstar = v - uvec;
          const double rs = vstar.norm();
          if (rs >= grid_.r_max || rs < 1e-12) continue;
          const RelVelFrame fr = make_frame(v, vstar);
          const Mat3 bt = kernel.kernel_B_sqrt_mumu_times_u(fr, v);
          const double contracted = bt.row(2).dot(vstar / rs);
          const double weight = two_pi * wu * cr.weights[b] * u * contracted;

          const double sidx = rs / h;  // position on the face grid, face k at k h
          int i0 = static_cast<int>(std::floor(sidx)) - 1;
          const double t = sidx - i0;
          const double lag[4] = {-(t - 1) * (t - 2) * (t - 3) / 6.0, t * (t - 2) * (t - 3) / 2.0,
                                 -t * (t - 1) * (t - 3) / 2.0, t * (t - 1) * (t - 2) / 6.0};
          for (int k = 0; k < 4; ++k) {
            int node = i0 + k;  // node index on the extended grid, 0 is the origin
            double sign = 1.0;
            if (node < 0) {
              node = -node;
              sign = -1.0;
            }
            if (node == 0 || node > M) continue;
            Q_(f, node - 1) += sign * weight * lag[k];
          }
        }
      }
    }
  }

  Vector vol(M);
  Vector fvol(M);
  for (int k = 0; k < M; ++k) {
    vol[k] = grid_.vol[k];
    fvol[k] = grid_.face_vol[k];
  }
  const Matrix GtW = G_.transpose() * fvol.asDiagonal();
  const Matrix minv_GtW = vol.cwiseInverse().asDiagonal() * GtW;
  A_ = -minv_GtW * lambda_face_.asDiagonal() * G_;
  K_ = minv_GtW * Q_ * G_;
  L_ = -A_ - K_;

  // Null basis by modified Gram-Schmidt in the discrete inner product.
  null_basis_ = Matrix(M, 2);
  for (int k = 0; k < M; ++k) {
    null_basis_(k, 0) = sqrt_mu(grid_.r[k]);
    null_basis_(k, 1) = grid_.r[k] * grid_.r[k] * sqrt_mu(grid_.r[k]);
  }
  for (int j = 0; j < 2; ++j) {
    Vector col = null_basis_.col(j);
    for (int i = 0; i < j; ++i) col -= inner(null_basis_.col(i), col) * null_basis_.col(i);
    null_basis_.col(j) = col / norm(col);
  }

  // Conservative generator: symmetrize in the vol-weighted inner product
  // and sandwich with I - P.
  const Matrix L_adj = vol.cwiseInverse().asDiagonal() * L_.transpose() * vol.asDiagonal();
  const Matrix P = null_basis_ * (null_basis_.transpose() * vol.asDiagonal());
  const Matrix IP = Matrix::Identity(M, M) - P;
  L_cons_ = IP * (0.5 * (L_ + L_adj)) * IP;
}

Vector RadialOperator::apply_A(const Vector& g) const { return A_ * g; }
Vector RadialOperator::apply_K(const Vector& g) const { return K_ * g; }
Vector RadialOperator::apply_L(const Vector& g) const { return L_ * g; }
Vector RadialOperator::gamma(const Vector& g) const { return G_ * g; }
Vector RadialOperator::inner_K_field(const Vector& g) const { return Q_ * (G_ * g); }

double RadialOperator::inner(const Vector& a, const Vector& b) const {
  double s = 0.0;
  for (int k = 0; k < grid_.M; ++k) s += grid_.vol[k] * a[k] * b[k];
  return s;
}

double RadialOperator::norm(const Vector& a) const { return std::sqrt(inner(a, a)); }

double RadialOperator::weighted_norm(const Vector& a, const WeightParams* params) const {
  if (params == nullptr) return norm(a);
  double s = 0.0;
  for (int k = 0; k < grid_.M; ++k) {
    const double w = weight_w(*params, grid_.r[k]);
    s += grid_.vol[k] * w * w * a[k] * a[k];
  }
  return std::sqrt(s);
}

double RadialOperator::norm_sigma_sq(const Vector& g, const WeightParams* params) const {
  const int M = grid_.M;
  double s = 0.0;
  for (int f = 0; f < M; ++f) {
    const double next = (f + 1 < M) ? g[f + 1] : (opts_.dirichlet_outer ? 0.0 : g[f]);
    const double dg = (next - g[f]) / grid_.h;
    const double avg = 0.5 * (next + g[f]);
    const double rf = grid_.faces[f];
    const double w = params ? weight_w(*params, rf) : 1.0;
    s += grid_.face_vol[f] * w * w * lambda_face_[f] * (dg * dg + 0.25 * rf * rf * avg * avg);
  }
  return s;
}

double RadialOperator::bilinear_L(const Vector& g1, const Vector& g2) const {
  const Vector gam1 = G_ * g1;
  const Vector gam2 = G_ * g2;
  const Vector flux = lambda_face_.cwiseProduct(gam1) - Q_ * gam1;
  double s = 0.0;
  for (int f = 0; f < grid_.M; ++f) s += grid_.face_vol[f] * flux[f] * gam2[f];
  return s;
}

Vector RadialOperator::project_P(const Vector& g) const {
  Vector out = Vector::Zero(grid_.M);
  for (int j = 0; j < null_basis_.cols(); ++j)
    out += inner(null_basis_.col(j), g) * null_basis_.col(j);
  return out;
}

MomentVector RadialOperator::moments(const Vector& g) const {
  MomentVector m;
  for (int k = 0; k < grid_.M; ++k) {
    const double w = grid_.vol[k] * g[k] * sqrt_mu(grid_.r[k]);
    m.mass += w;
    m.energy += w * grid_.r[k] * grid_.r[k];
  }
  return m;
}

double RadialOperator::stable_dt() const { return 0.4 * grid_.h * grid_.h / max_lambda_; }

// --- probes -----------------------------------------------------------------

CoercivityReport coercivity_probe(const RadialOperator& op, int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw Error(ErrorCode::input, "coercivity_probe: n_samples must be >= 1");
  std::mt19937_64 rng(seed);
  const RadialGrid& grid = op.grid();
  CoercivityReport rep;
  rep.samples = n_samples;
  for (int s = 0; s < n_samples; ++s) {
    double c[4];
    for (double& ci : c) ci = 2.0 * unit_draw(rng) - 1.0;
    const double a = 0.2 + 0.4 * unit_draw(rng);
    Vector g(grid.M);
    for (int k = 0; k < grid.M; ++k) {
      const double r2 = grid.r[k] * grid.r[k];
      g[k] = (c[0] + r2 * (c[1] + r2 * (c[2] + r2 * c[3]))) * std::exp(-a * r2);
    }
    g -= op.project_P(g);
    rep.ratios.push_back(op.bilinear_L(g, g) / op.norm_sigma_sq(g));
  }
  rep.min_ratio = *std::min_element(rep.ratios.begin(), rep.ratios.end());
  rep.max_ratio = *std::max_element(rep.ratios.begin(), rep.ratios.end());

  const int bins = 10;
  if (rep.min_ratio > 0.0) {
    const double lo = std::log10(rep.min_ratio);
    const double hi = std::log10(rep.max_ratio) + 1e-12;
    rep.histogram_counts.assign(bins, 0);
    for (int b = 0; b <= bins; ++b) rep.histogram_edges.push_back(std::pow(10.0, lo + (hi - lo) * b / bins));
    for (double x : rep.ratios) {
      const int b = std::min(bins - 1, static_cast<int>((std::log10(x) - lo) / (hi - lo) * bins));
      ++rep.histogram_counts[b];
    }
  }
  return rep;
}

// --- evolution --------------------------------------------------------------

Vector initial_preset(const RadialOperator& op, const std::string& name) {
  const RadialGrid& grid = op.grid();
  std::function<double(double)> f;
  if (name == "gaussian_bump") {
    f = [](double r) { return std::exp(-0.5 * r * r); };
  } else if (name == "shell") {
    f = [](double r) { return std::exp(-4.0 * (r - 2.0) * (r - 2.0)); };
  } else if (name == "hermite_mode") {
    // Fourth-order radial Hermite (Sonine) mode, orthogonal to the invariants.
    f = [](double r) {
      const double r2 = r * r;
      return (r2 * r2 - 10.0 * r2 + 15.0) * sqrt_mu(r);
    };
  } else {
    throw Error(ErrorCode::input, "unknown preset '" + name + "' (gaussian_bump, shell, hermite_mode)");
  }
  Vector g = RadialFunction::sample(grid, f).values;
  g -= op.project_P(g);
  return g;
}

std::pair<double, double> fit_stretched_exponential(const std::vector<double>& t,
                                                    const std::vector<double>& norm) {
  std::vector<double> ts;
  std::vector<double> ys;
  for (std::size_t i = 0; i < t.size() && i < norm.size(); ++i) {
    if (t[i] > 0.0 && norm[i] > 0.0) {
      ts.push_back(t[i]);
      ys.push_back(std::log(norm[i]));
    }
  }
  if (ts.size() < 3) return {0.0, 0.0};
  double best_p = 0.0;
  double best_rate = 0.0;
  double best_res = std::numeric_limits<double>::infinity();
  // Grid over p, linear least squares in (a, rate) for each.
  for (int i = 0; i <= 300; ++i) {
    const double p = 0.05 + 0.005 * i;
    Eigen::MatrixXd X(ts.size(), 2);
    Eigen::VectorXd y(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
      X(k, 0) = 1.0;
      X(k, 1) = -std::pow(ts[k], p);
      y[k] = ys[k];
    }
    const Eigen::VectorXd coef = X.colPivHouseholderQr().solve(y);
    const double res = (X * coef - y).squaredNorm();
    if (res < best_res) {
      best_res = res;
      best_p = p;
      best_rate = coef[1];
    }
  }
  return {best_p, best_rate};
}

EvolutionResult evolve_radial(const RadialOperator& op, const Vector& f0, const WeightParams& params,
                              double dt, double t_end) {
  params.validate();
  const RadialGrid& grid = op.grid();
  if (f0.size() != grid.M) throw Error(ErrorCode::input, "evolve: f0 has the wrong length");
  if (!(dt > 0.0) || !(t_end >= 0.0)) throw Error(ErrorCode::domain, "evolve: need dt > 0, t_end >= 0");
  if (dt > op.stable_dt() * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "evolve: dt = " << dt << " exceeds the stability bound 0.4 h^2 / max lambda = "
        << op.stable_dt() << "; lower --dt or coarsen --m";
    throw Error(ErrorCode::step_size, msg.str());
  }

  Vector smu(grid.M);
  Vector e2(grid.M);
  for (int k = 0; k < grid.M; ++k) {
    smu[k] = sqrt_mu(grid.r[k]);
    e2[k] = grid.r[k] * grid.r[k] * smu[k];
  }
  const double f0n = op.norm(f0);
  const double mass_scale = std::max(f0n * op.norm(smu), 1e-300);
  const double energy_scale = std::max(f0n * op.norm(e2), 1e-300);
  const MomentVector m0 = op.moments(f0);
  if (std::abs(m0.mass) > 1e-8 * mass_scale || std::abs(m0.energy) > 1e-8 * energy_scale)
    throw Error(ErrorCode::input, "evolve: f0 carries mass or energy; remove the null component first");

  const Matrix& Lc = op.L_conservative();
  EvolutionResult res;
  res.summary.dt = dt;
  res.summary.theta_ratio = params.theta / (params.theta + 1.0);

  const auto record = [&](double t, const Vector& f) {
    EvolutionSample s;
    s.t = t;
    s.moments = op.moments(f);
    s.l2 = op.norm(f);
    s.weighted = op.weighted_norm(f, &params);
    s.sigma_norm = std::sqrt(std::max(0.0, op.norm_sigma_sq(f, &params)));
    res.summary.max_mass_drift = std::max(res.summary.max_mass_drift, std::abs(s.moments.mass) / mass_scale);
    res.summary.max_energy_drift =
        std::max(res.summary.max_energy_drift, std::abs(s.moments.energy) / energy_scale);
    if (!res.series.empty()) {
      const EvolutionSample& prev = res.series.back();
      if (s.l2 > prev.l2 * (1.0 + 1e-13) + 1e-300) res.summary.l2_monotone = false;
      if (s.weighted > prev.weighted * (1.0 + 1e-13) + 1e-300) res.summary.weighted_monotone = false;
    }
    res.series.push_back(s);
  };

  Vector f = f0;
  record(0.0, f);
  const int steps = static_cast<int>(std::ceil(t_end / dt - 1e-9));
  for (int n = 0; n < steps; ++n) {
    const double step = std::min(dt, t_end - n * dt);
    const Vector k1 = -(Lc * f);
    const Vector k2 = -(Lc * (f + 0.5 * step * k1));
    const Vector k3 = -(Lc * (f + 0.5 * step * k2));
    const Vector k4 = -(Lc * (f + step * k3));
    f += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    record(std::min(t_end, (n + 1) * dt), f);
  }
  res.summary.steps = steps;

  std::vector<double> ts;
  std::vector<double> ns;
  for (const EvolutionSample& s : res.series) {
    ts.push_back(s.t);
    ns.push_back(s.l2);
  }
  const auto [p, rate] = fit_stretched_exponential(ts, ns);
  res.summary.fitted_p = p;
  res.summary.fitted_rate = rate;
  res.final_state = f;
  return res;
}

}  // namespace balescu
