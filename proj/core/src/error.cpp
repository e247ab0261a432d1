#include "cone_spectra/error.hpp"

namespace cone_spectra {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::OmegaOutOfRange: return "OmegaOutOfRange";
    case ErrorCode::InvalidCone: return "InvalidCone";
    case ErrorCode::MeshBudgetExceeded: return "MeshBudgetExceeded";
    case ErrorCode::DegenerateArc: return "DegenerateArc";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::SingularMass: return "SingularMass";
    case ErrorCode::NonMonotoneSequence: return "NonMonotoneSequence";
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::NegativeLambda: return "NegativeLambda";
    case ErrorCode::InconsistentPair: return "InconsistentPair";
    case ErrorCode::NonIntegrable: return "NonIntegrable";
    case ErrorCode::ThetaOutOfRange: return "ThetaOutOfRange";
    case ErrorCode::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::NonPlanarInput: return "NonPlanarInput";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

}  // namespace cone_spectra
