#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace socapm {

enum class ErrorCode {
  InvalidInput,
  DimensionMismatch,
  NonOrthonormalBasis,
  AnchorNotOnBoundary,
  PreconditionViolation,
  NotNonTransversal,
  CertificateVerificationFailed,
  CertificateRejected,
  InsufficientCheckpoints,
  NonPositiveDistance,
  LemmaViolation,
  UnknownInstance,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised by facial_reduction_chain; `step` is 1-based.
class CertificateRejectedAtStep : public Error {
 public:
  CertificateRejectedAtStep(std::size_t step, const std::string& reason)
      : Error(ErrorCode::CertificateRejected,
              "certificate rejected at step " + std::to_string(step) + ": " + reason),
        step_(step) {}

  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

}  // namespace socapm
