#pragma once

// Seeded instance factories shared by the tests, the acceptance suite and the
// CLI. All randomness flows through std::mt19937_64 so runs are reproducible.

#include <cstdint>
#include <random>
#include <vector>

#include "secular/instance.hpp"

namespace secular {

using Rng = std::mt19937_64;

/// Haar-like random orthogonal matrix (modified Gram-Schmidt on a Gaussian matrix).
Matrix random_orthogonal(std::size_t n, Rng& rng);

/// Uniformly distributed point on the sphere ||x||^2 = r.
Vector random_on_sphere(std::size_t n, double r, Rng& rng);

/// Standard Gaussian vector.
Vector random_gaussian(std::size_t n, Rng& rng);

/// Q diag(eigenvalues) Q^T, symmetrized exactly.
SymmetricOperator operator_from_spectrum(const Matrix& q, const std::vector<double>& eigenvalues);

/// T with entries ~ N(0,1) symmetrized, z ~ N(0, I).
Instance random_instance(std::size_t n, std::uint64_t seed);

/// Instance with prescribed eigenvalues and z given in eigen-coordinates,
/// conjugated by a random orthogonal matrix.
Instance instance_from_spectrum(const std::vector<double>& eigenvalues,
                                const std::vector<double>& z_spectral, std::uint64_t seed);

}  // namespace secular
