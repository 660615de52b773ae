#include "balescu/error.hpp"

#include <cmath>

#include "balescu/config.hpp"

namespace balescu {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ok: return "ok";
    case ErrorCode::domain: return "domain";
    case ErrorCode::overflow_guard: return "overflow_guard";
    case ErrorCode::tolerance: return "tolerance";
    case ErrorCode::singularity: return "singularity";
    case ErrorCode::budget: return "budget";
    case ErrorCode::input: return "input";
    case ErrorCode::step_size: return "step_size";
    case ErrorCode::io: return "io";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

void PlasmaConfig::validate() const {
  if (!(k0 > 0.0) || !std::isfinite(k0)) throw Error(ErrorCode::domain, "k0 must be positive and finite");
  if (!(quad_rel_tol > 0.0 && quad_rel_tol < 1.0))
    throw Error(ErrorCode::domain, "quad_rel_tol must lie in (0, 1)");
  if (!(quad_abs_tol > 0.0 && quad_abs_tol < 1.0))
    throw Error(ErrorCode::domain, "quad_abs_tol must lie in (0, 1)");
  if (!(psi_switch_x > 0.0) || !std::isfinite(psi_switch_x))
    throw Error(ErrorCode::domain, "psi_switch_x must be positive and finite");
}

}  // namespace balescu
