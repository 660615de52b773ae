#include <doctest.h>

#include <cmath>
#include <numbers>

#include "balescu/dispersion.hpp"
#include "balescu/error.hpp"
#include "oracle_values.hpp"

using namespace balescu;

TEST_CASE("dawson-type function") {
  CHECK(dawson_scaled(0.0) == 0.0);
  CHECK(dawson_scaled(1.0) == doctest::Approx(oracle::F1).epsilon(1e-14));
  const double xf = 20.0 * dawson_scaled(20.0);
  CHECK(xf >= 1.0);
  CHECK(xf <= 1.01);
  CHECK(xf == doctest::Approx(oracle::x_F_20).epsilon(1e-14));
  // Both sides of the series/asymptotic switch agree with each other.
  CHECK(dawson_scaled(8.0, 7.0) == doctest::Approx(dawson_scaled(8.0, 9.0)).epsilon(1e-13));
}

TEST_CASE("psi values and parity") {
  const DispersionValue p0 = psi(0.0);
  CHECK(p0.re == 1.0);
  CHECK(p0.im == 0.0);
  CHECK(psi(1.0).im == doctest::Approx(-std::sqrt(std::numbers::pi / 2.0) * std::exp(-0.5)).epsilon(1e-15));
  CHECK(psi(1.0).im == doctest::Approx(oracle::psi_i_1).epsilon(1e-14));
  const double x2r = 100.0 * psi(10.0).re;
  CHECK(std::abs(x2r - (-1.0315)) < 1e-3);
  CHECK(x2r == doctest::Approx(oracle::x2_psi_r_10).epsilon(1e-13));
  CHECK(400.0 * psi(20.0).re == doctest::Approx(oracle::x2_psi_r_20).epsilon(1e-13));
  for (double x = 0.0; x < 40.0; x += 0.37) {
    CHECK(psi(-x).re == psi(x).re);
    CHECK(psi(-x).im == -psi(x).im);
  }
}

TEST_CASE("epsilon") {
  CHECK(epsilon(1.0, 0.0).re == 2.0);
  CHECK(epsilon(1.0, 0.0).im == 0.0);
  CHECK(epsilon(2.0, 0.0).re == 1.25);
  const double x = oracle::root_psi_r_quarter;
  const DispersionValue e = epsilon(0.5, x);
  CHECK(std::abs(e.re) < 1e-14);
  CHECK(e.im == doctest::Approx(oracle::psi_i_at_root / 0.25).epsilon(1e-13));
  CHECK(e.im != 0.0);
  CHECK_THROWS_AS(epsilon(0.0, 1.0), Error);
  CHECK_THROWS_AS(epsilon(-1.0, 1.0), Error);
}

TEST_CASE("principal-value oracle") {
  CHECK(psi_r_pv_oracle(0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(psi_r_pv_oracle(1.0) - psi(1.0).re) < 1e-7);
  for (double x : {0.3, 2.5, 5.0, 7.9}) {
    CHECK(psi_r_pv_oracle(-x) == doctest::Approx(psi_r_pv_oracle(x)).epsilon(1e-12));
    CHECK(std::abs(psi_r_pv_oracle(x) - psi(x).re) < 1e-9);
  }
  try {
    psi_r_pv_oracle(8.5);
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain);
  }
}
