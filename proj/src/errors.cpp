#include "grassop/errors.hpp"

namespace grassop {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InvalidSignature: return "InvalidSignature";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotContained: return "NotContained";
    case ErrorKind::NonOrthogonalEigenspaces: return "NonOrthogonalEigenspaces";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::SpectrumMismatch: return "SpectrumMismatch";
    case ErrorKind::TooManyEigenvalues: return "TooManyEigenvalues";
    case ErrorKind::NotInSd: return "NotInSd";
    case ErrorKind::ClassMismatch: return "ClassMismatch";
    case ErrorKind::SignatureMismatch: return "SignatureMismatch";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::BadIndices: return "BadIndices";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::NotIJConnected: return "NotIJConnected";
    case ErrorKind::NotMutuallyAdjacent: return "NotMutuallyAdjacent";
    case ErrorKind::NotAClique: return "NotAClique";
    case ErrorKind::AmbiguousOrientation: return "AmbiguousOrientation";
    case ErrorKind::NotAdjacent: return "NotAdjacent";
    case ErrorKind::MultiplicityTooSmall: return "MultiplicityTooSmall";
    case ErrorKind::DifferentComponents: return "DifferentComponents";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::RequiresKEquals2: return "RequiresKEquals2";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace grassop
