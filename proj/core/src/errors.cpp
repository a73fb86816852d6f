#include "chlab/errors.hpp"

namespace chlab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MomentumNotPositive: return "MomentumNotPositive";
    case ErrorCode::InsufficientDecay: return "InsufficientDecay";
    case ErrorCode::IntegratorDiverged: return "IntegratorDiverged";
    case ErrorCode::NearZeroK: return "NearZeroK";
    case ErrorCode::DegenerateColumn: return "DegenerateColumn";
    case ErrorCode::PoleOfPhase: return "PoleOfPhase";
    case ErrorCode::NoAdmissibleAngle: return "NoAdmissibleAngle";
    case ErrorCode::SignViolation: return "SignViolation";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::ContourCollision: return "ContourCollision";
    case ErrorCode::PoleQuery: return "PoleQuery";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::SymmetryViolation: return "SymmetryViolation";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::NonMonotoneX: return "NonMonotoneX";
    case ErrorCode::BlowUp: return "BlowUp";
    case ErrorCode::MissingData: return "MissingData";
    case ErrorCode::BoundaryRay: return "BoundaryRay";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

bool Error::is_invariant_violation() const noexcept {
  return code_ != ErrorCode::Io && code_ != ErrorCode::MissingData;
}

}  // namespace chlab
