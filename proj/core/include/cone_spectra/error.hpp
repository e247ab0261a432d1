#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cone_spectra {

enum class ErrorCode {
  UnsupportedDimension,
  OmegaOutOfRange,
  InvalidCone,
  MeshBudgetExceeded,
  DegenerateArc,
  DegenerateTriangle,
  DimensionMismatch,
  ConvergenceFailure,
  SingularMass,
  NonMonotoneSequence,
  AllZero,
  NegativeLambda,
  InconsistentPair,
  NonIntegrable,
  ThetaOutOfRange,
  LambdaOutOfRange,
  QuadratureFailure,
  NonPlanarInput,
  InvalidArgument,
  IoFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// front ends can report it in machine-readable form.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace cone_spectra
