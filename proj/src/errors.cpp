#include "secular/errors.hpp"

namespace secular {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::LambdaTooSmall: return "LambdaTooSmall";
    case ErrorCode::IterationCapExceeded: return "IterationCapExceeded";
    case ErrorCode::MuAtEigenvalue: return "MuAtEigenvalue";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NonPositiveRadius: return "NonPositiveRadius";
    case ErrorCode::MuOutOfRange: return "MuOutOfRange";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::AsymmetricOperator: return "AsymmetricOperator";
    case ErrorCode::ZeroZ: return "ZeroZ";
    case ErrorCode::ZeroPhi: return "ZeroPhi";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NonFinite:
    case ErrorCode::AsymmetricOperator:
    case ErrorCode::ZeroZ:
    case ErrorCode::ZeroPhi:
    case ErrorCode::SchemaError:
    case ErrorCode::IoError:
      return true;
    default:
      return false;
  }
}

}  // namespace secular
