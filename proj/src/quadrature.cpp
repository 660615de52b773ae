#include "balescu/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include "balescu/error.hpp"

namespace balescu::quad {

namespace {

Rule build_rule(int n) {
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // legendre_p_zeros returns the nonnegative zeros in ascending order.
  const auto zeros = boost::math::legendre_p_zeros<double>(n);
  const int half = n / 2;
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    const double x = zeros[i];
    const double dp = boost::math::legendre_p_prime(n, x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // zeros[0] is 0 for odd n.
    const int lo = (n % 2 == 1) ? half - static_cast<int>(i) : half - 1 - static_cast<int>(i);
    const int hi = (n % 2 == 1) ? half + static_cast<int>(i) : half + static_cast<int>(i);
    rule.nodes[lo] = -x;
    rule.weights[lo] = w;
    rule.nodes[hi] = x;
    rule.weights[hi] = w;
  }
  return rule;
}

// Finite pieces are mapped onto [-1, 1] first: on very narrow intervals
// boost's error estimate inflates with depth even when the value is exact.
double gk_piece(const std::function<double(double)>& f, double a, double b, double tol, double* err) {
  double l1 = 0.0;
  if (!std::isfinite(a) || !std::isfinite(b))
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, tol, err, &l1);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  const auto g = [&](double s) { return f(mid + half * s); };
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, -1.0, 1.0, 20, tol, err, &l1);
  *err *= std::abs(half);
  return v * half;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorCode::domain, "Gauss-Legendre order must be >= 1");
  static std::mutex mutex;
  static std::map<int, Rule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

double fixed(const std::function<double(double)>& f, double a, double b, int n) {
  const Rule& rule = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

Result adaptive(const std::function<double(double)>& f, double a, double b, double rel_tol,
                double abs_tol) {
  Result res;
  if (a == b) return res;
  res.value = gk_piece(f, a, b, rel_tol * 0.1, &res.error);
  const double target = std::max(abs_tol, rel_tol * std::abs(res.value));
  if (!(res.error <= target) || !std::isfinite(res.value)) {
    std::ostringstream msg;
    msg << "adaptive quadrature on [" << a << ", " << b << "] reached error " << res.error
        << " > target " << target << " (estimate " << res.value << ")";
    throw ToleranceError(msg.str(), res.value, res.error);
  }
  return res;
}

Result adaptive_with_breaks(const std::function<double(double)>& f, double a, double b,
                            std::span<const double> breaks, double rel_tol, double abs_tol) {
  std::vector<double> pts{a};
  for (double p : breaks)
    if (p > std::min(a, b) && p < std::max(a, b)) pts.push_back(p);
  pts.push_back(b);
  if (a <= b)
    std::sort(pts.begin(), pts.end());
  else
    std::sort(pts.begin(), pts.end(), std::greater<>());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  Result total;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double err = 0.0;
    const double v = gk_piece(f, pts[i], pts[i + 1], rel_tol * 0.1, &err);
    total.value += v;
    total.error += err;
  }
  const double target = std::max(abs_tol, rel_tol * std::abs(total.value));
  if (!(total.error <= target) || !std::isfinite(total.value)) {
    std::ostringstream msg;
    msg << "adaptive quadrature with " << pts.size() - 2 << " breakpoints reached error "
        << total.error << " > target " << target;
    throw ToleranceError(msg.str(), total.value, total.error);
  }
  return total;
}

}  // namespace balescu::quad
