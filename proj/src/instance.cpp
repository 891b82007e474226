#include "secular/instance.hpp"

#include "secular/errors.hpp"

namespace secular {

Instance::Instance(SymmetricOperator op, Vector z) : op_(std::move(op)), z_(std::move(z)) {
  if (z_.dim() != op_.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "z has dimension " + std::to_string(z_.dim()) + " but T has dimension " +
                    std::to_string(op_.dim()));
  }
  if (z_.norm() == 0.0) throw Error(ErrorCode::ZeroZ, "z must be non-zero");
  spectrum_ = eigendecompose(op_);
  op_norm_ = operator_norm(spectrum_);
  z_spectral_ = spectrum_.to_spectral(z_);
}

}  // namespace secular
