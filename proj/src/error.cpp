#include "fkk/error.hpp"

namespace fkk {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidResolution: return "InvalidResolution";
    case ErrorCode::InvalidDegree: return "InvalidDegree";
    case ErrorCode::InvalidQuadrature: return "InvalidQuadrature";
    case ErrorCode::OrderOutOfRange: return "OrderOutOfRange";
    case ErrorCode::InvalidStep: return "InvalidStep";
    case ErrorCode::InvalidPenalty: return "InvalidPenalty";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::IncompatibleMesh: return "IncompatibleMesh";
    case ErrorCode::MisalignedDiscontinuity: return "MisalignedDiscontinuity";
    case ErrorCode::NonIntegralSteps: return "NonIntegralSteps";
    case ErrorCode::InvalidProjection: return "InvalidProjection";
    case ErrorCode::DegreeViolation: return "DegreeViolation";
    case ErrorCode::FactorizationFailed: return "FactorizationFailed";
    case ErrorCode::Config: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace fkk
