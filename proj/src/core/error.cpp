#include "core/error.hpp"

namespace socapm {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonOrthonormalBasis: return "NonOrthonormalBasis";
    case ErrorCode::AnchorNotOnBoundary: return "AnchorNotOnBoundary";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::NotNonTransversal: return "NotNonTransversal";
    case ErrorCode::CertificateVerificationFailed: return "CertificateVerificationFailed";
    case ErrorCode::CertificateRejected: return "CertificateRejected";
    case ErrorCode::InsufficientCheckpoints: return "InsufficientCheckpoints";
    case ErrorCode::NonPositiveDistance: return "NonPositiveDistance";
    case ErrorCode::LemmaViolation: return "LemmaViolation";
    case ErrorCode::UnknownInstance: return "UnknownInstance";
  }
  return "Unknown";
}

}  // namespace socapm
