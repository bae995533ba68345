#pragma once

#include <stdexcept>
#include <string>

namespace hf {

enum class ErrorCode {
  Io,
  Syntax,
  UnknownPackage,
  MissingOutline,
  DegenerateOutline,
  ComponentOutsideOutline,
  DuplicatePackage,
  InvariantViolation,
  PackageTooSmall,
  UnsupportedOnProfile,
  MissingCavityModel,
  OutOfCalibratedRange,
  Infeasible,
  BooleanFailure,
  CavityOverlap,
  UnknownNet,
  MissingPartNumbers,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code);

/// Shared error type for the whole pipeline. `code()` identifies the failure
/// class; `what()` carries the human-readable detail (file/line for parse
/// errors, refDes/package names for domain errors).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, std::string message) {
  throw Error(code, std::move(message));
}

}  // namespace hf
