#pragma once

#include <stdexcept>
#include <string>

namespace balescu {

// Numeric values are part of the C ABI (see balescu.h); do not renumber.
enum class ErrorCode : int {
  ok = 0,
  domain = 1,          // argument outside the mathematical domain
  overflow_guard = 2,  // unscaled value not representable; use the scaled variant
  tolerance = 3,       // quadrature or self-check did not reach the requested tolerance
  singularity = 4,     // v == v* or similar coincident-point request
  budget = 5,          // problem size exceeds what the routine supports
  input = 6,           // precondition on input data violated
  step_size = 7,       // time step above the stability bound
  io = 8,
  internal = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Quadrature that stopped short of its target; carries the best estimate.
class ToleranceError : public Error {
 public:
  ToleranceError(const std::string& what, double estimate, double error_estimate)
      : Error(ErrorCode::tolerance, what), estimate_(estimate), error_estimate_(error_estimate) {}
  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

const char* error_code_name(ErrorCode code) noexcept;

}  // namespace balescu
