#pragma once

#include <stdexcept>
#include <string>

namespace triq {

enum class ErrorKind {
  NonUnitQuaternion,
  NonUnitTrident,
  ScalarResidueTooLarge,
  OutOfDomain,
  InsufficientNodes,
  NearSingularPosition,
  PolarSingularity,
  ConvergenceFailure,
  InvalidStep,
  SingularFit,
  DegreeTooHigh,
  InvalidConfig,
  Io,
  GridMismatch,
};

const char* to_string(ErrorKind kind);

/// Exception carrying a machine-checkable failure category.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace triq
