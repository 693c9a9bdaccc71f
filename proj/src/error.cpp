#include "gaussep/error.hpp"

namespace gaussep {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotSPD: return "NotSPD";
    case ErrorCode::MalformedHermitian: return "MalformedHermitian";
    case ErrorCode::NonPositiveScale: return "NonPositiveScale";
    case ErrorCode::FactorNotSymplectic: return "FactorNotSymplectic";
    case ErrorCode::NotSymplectic: return "NotSymplectic";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NotPhysical: return "NotPhysical";
    case ErrorCode::PreconditionDetC: return "PreconditionDetC";
    case ErrorCode::NegativeOccupation: return "NegativeOccupation";
    case ErrorCode::SingularCovariance: return "SingularCovariance";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Format: return "Format";
  }
  return "Unknown";
}

}  // namespace gaussep
