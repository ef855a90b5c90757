#pragma once

#include <stdexcept>
#include <string>

namespace vbound {

enum class Errc {
  infeasible,
  unbounded,
  dimension_too_large,
  unbounded_polyhedron,
  empty_polyhedron,
  not_full_dimensional,
  not_centrally_symmetric,
  convergence_failure,
  invalid_params,
  rho221_violated,
  infeasible221,
  no_feasible_point,
  circumradius_violated,
  degree_condition_violated,
  too_large_for_exhaustive,
  too_large,
  precondition_violated,
  orthogonalization_failure,
  invalid_input,
  hypothesis_failed,
  internal,
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::infeasible: return "Infeasible";
    case Errc::unbounded: return "Unbounded";
    case Errc::dimension_too_large: return "DimensionTooLarge";
    case Errc::unbounded_polyhedron: return "UnboundedPolyhedron";
    case Errc::empty_polyhedron: return "EmptyPolyhedron";
    case Errc::not_full_dimensional: return "NotFullDimensional";
    case Errc::not_centrally_symmetric: return "NotCentrallySymmetric";
    case Errc::convergence_failure: return "ConvergenceFailure";
    case Errc::invalid_params: return "InvalidParams";
    case Errc::rho221_violated: return "Rho221Violated";
    case Errc::infeasible221: return "Infeasible221";
    case Errc::no_feasible_point: return "NoFeasiblePoint";
    case Errc::circumradius_violated: return "CircumradiusViolated";
    case Errc::degree_condition_violated: return "DegreeConditionViolated";
    case Errc::too_large_for_exhaustive: return "TooLargeForExhaustive";
    case Errc::too_large: return "TooLarge";
    case Errc::precondition_violated: return "PreconditionViolated";
    case Errc::orthogonalization_failure: return "OrthogonalizationFailure";
    case Errc::invalid_input: return "InvalidInput";
    case Errc::hypothesis_failed: return "HypothesisFailed";
    case Errc::internal: return "InternalError";
  }
  return "Unknown";
}

/// Single exception type for the library; `code()` says which contract failed.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace vbound
