#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace grassop {

enum class ErrorKind {
  InvalidInput,
  InvalidSignature,
  DimensionMismatch,
  NotContained,
  NonOrthogonalEigenspaces,
  NotHermitian,
  SpectrumMismatch,
  TooManyEigenvalues,
  NotInSd,
  ClassMismatch,
  SignatureMismatch,
  PreconditionViolated,
  InternalInconsistency,
  BadIndices,
  DegenerateInput,
  NotIJConnected,
  NotMutuallyAdjacent,
  NotAClique,
  AmbiguousOrientation,
  NotAdjacent,
  MultiplicityTooSmall,
  DifferentComponents,
  NotUnitary,
  NotInvertible,
  RequiresKEquals2,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (and tests)
// can branch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace grassop
