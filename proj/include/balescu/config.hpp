#pragma once

namespace balescu {

/// Cut-off and numerical tolerances shared by every evaluator.
struct PlasmaConfig {
  double k0 = 1.0;                // wavenumber cut-off
  double quad_rel_tol = 1e-10;    // adaptive quadrature, relative
  double quad_abs_tol = 1e-14;    // adaptive quadrature, absolute floor
  double psi_switch_x = 8.0;      // series / asymptotic switch for the Dawson-type function

  /// Throws Error(domain) when a field is out of range.
  void validate() const;
};

}  // namespace balescu
