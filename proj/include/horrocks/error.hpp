#pragma once

#include <stdexcept>
#include <string>

namespace horrocks {

enum class ErrorKind {
  Parse,
  Validation,
  FieldMismatch,
  PrereqVanishingFailed,
  VerificationFailed,
  Internal,
  NotMinimalGamma,
  NotStripped,
  LiftFailed,
  BoundExceeded,
  Undecided,
  Unsupported,
  Precondition,
  ExactnessViolation,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::PrereqVanishingFailed: return "PrereqVanishingFailed";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::Internal: return "InternalInvariantViolation";
    case ErrorKind::NotMinimalGamma: return "NotMinimalGamma";
    case ErrorKind::NotStripped: return "NotStripped";
    case ErrorKind::LiftFailed: return "LiftFailed";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::Undecided: return "Undecided";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::Precondition: return "PreconditionViolation";
    case ErrorKind::ExactnessViolation: return "ExactnessViolation";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace horrocks
