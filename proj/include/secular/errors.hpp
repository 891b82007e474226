#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace secular {

enum class ErrorCode {
  // Domain errors: the input is well formed but outside an operation's range.
  LambdaTooSmall,
  IterationCapExceeded,
  MuAtEigenvalue,
  OutOfRange,
  NonPositiveRadius,
  MuOutOfRange,
  TooFewSamples,
  NonConvergence,
  // Input errors: malformed data, schema violations, broken invariants.
  DimensionMismatch,
  NonFinite,
  AsymmetricOperator,
  ZeroZ,
  ZeroPhi,
  SchemaError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// True for codes that describe malformed input rather than a domain failure.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace secular
