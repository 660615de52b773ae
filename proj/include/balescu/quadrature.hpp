#pragma once

#include <functional>
#include <span>
#include <vector>

namespace balescu::quad {

/// Gauss-Legendre rule on [-1, 1]. Nodes ascending.
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

/// Cached n-point Gauss-Legendre rule (thread-safe, built on first use).
const Rule& gauss_legendre(int n);

/// Fixed-order Gauss-Legendre on [a, b].
double fixed(const std::function<double(double)>& f, double a, double b, int n);

struct Result {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod on [a, b]; b may be +infinity.
/// Throws ToleranceError when the error estimate exceeds max(abs_tol, rel_tol*|I|).
Result adaptive(const std::function<double(double)>& f, double a, double b, double rel_tol,
                double abs_tol);

/// Adaptive integration split at the given interior breakpoints (unsorted ok).
Result adaptive_with_breaks(const std::function<double(double)>& f, double a, double b,
                            std::span<const double> breaks, double rel_tol, double abs_tol);

}  // namespace balescu::quad
