#pragma once

#include "balescu/config.hpp"

namespace balescu {

/// Complex value Psi or epsilon.
struct DispersionValue {
  double re = 0.0;
  double im = 0.0;
  double abs() const;
};

/// F(x) = exp(-x^2/2) * int_0^x exp(t^2/2) dt, computed without forming exp(+x^2/2).
double dawson_scaled(double x, double switch_x = PlasmaConfig{}.psi_switch_x);

/// Psi = Psi_R + i Psi_I at the Maxwellian; Psi_R(x) = 1 - x F(x),
/// Psi_I(x) = -sqrt(pi/2) x exp(-x^2/2). Exactly even / odd in x.
DispersionValue psi(double x, double switch_x = PlasmaConfig{}.psi_switch_x);

/// Longitudinal permittivity eps(|k|, x) = 1 + Psi(x) / |k|^2. Throws on k_mag <= 0.
DispersionValue epsilon(double k_mag, double x, double switch_x = PlasmaConfig{}.psi_switch_x);

/// Psi_R by principal-value quadrature (symmetric subtraction). Oracle for |x| <= 8.
double psi_r_pv_oracle(double x, const PlasmaConfig& cfg = {});

}  // namespace balescu
