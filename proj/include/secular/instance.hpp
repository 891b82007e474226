#pragma once

#include "secular/linalg.hpp"

namespace secular {

/// A pair (T, z) with z != 0, together with the cached spectral data every
/// solver needs: the eigendecomposition of T, ||T||, and z in eigen-coordinates.
class Instance {
 public:
  /// Throws ZeroZ when z == 0 and DimensionMismatch when dims differ.
  Instance(SymmetricOperator op, Vector z);

  const SymmetricOperator& op() const noexcept { return op_; }
  const Vector& z() const noexcept { return z_; }
  const Spectrum& spectrum() const noexcept { return spectrum_; }
  double op_norm() const noexcept { return op_norm_; }
  /// Q^T z
  const Vector& z_spectral() const noexcept { return z_spectral_; }
  std::size_t dim() const noexcept { return z_.dim(); }
  /// Largest eigenvalue of T.
  double top_eigenvalue() const noexcept { return spectrum_.values.front(); }

 private:
  SymmetricOperator op_;
  Vector z_;
  Spectrum spectrum_;
  double op_norm_;
  Vector z_spectral_;
};

}  // namespace secular
