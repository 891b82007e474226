#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "secular/instance.hpp"

namespace secular {

/// |lambda_i - ||T||| <= kEigenCoincidence (1 + ||T||) puts i in the top set E.
inline constexpr double kEigenCoincidence = 1e-9;
/// A spectral component of z counts as zero when it is <= kZeroComponent ||z||.
inline constexpr double kZeroComponent = 1e-10;

enum class SolutionSetKind { Empty, Singleton, Affine };

/// Structure of V = { x : T(x) - ||T|| x = z } and theta = inf_{x in V} ||x||^2.
struct BoundaryDiagnosis {
  bool norm_is_eigenvalue = false;
  SolutionSetKind v_kind = SolutionSetKind::Empty;
  /// +infinity when V is empty.
  double theta = 0.0;
  std::optional<Vector> min_norm_solution;
  /// Multiplicity of ||T|| as an eigenvalue (dimension of ker(T - ||T|| I)).
  std::size_t kernel_dim = 0;
};

BoundaryDiagnosis diagnose_boundary(const Instance& inst);

/// Indices i with |lambda_i - value| <= kEigenCoincidence (1 + ||T||).
std::vector<std::size_t> eigen_cluster(const Instance& inst, double value);

/// Norm of z's spectral components on the given index set.
double component_norm(const Instance& inst, const std::vector<std::size_t>& indices);

/// Whether x maximizes J(x) = <T x, x> - 2 <z, x> globally: this holds
/// exactly when T(x) = z is solvable and <T x, x> <= 0 for every x.
struct MaxClassification {
  bool has_global_max = false;
  /// A solution of T(x) = z (minimum-norm), when one exists.
  std::optional<Vector> witness;
  /// lambda_1 <= tol
  bool t_nonpositive = false;
};

MaxClassification classify_global_max(const Instance& inst, double tol);

/// Positive semidefinite T = Q diag(d) Q^T with random orthogonal Q and
/// d >= 0 (top value strictly largest), and z with a non-zero component on
/// the top eigenvector. The boundary equation then has no solution.
Instance positive_instance_generator(std::size_t n, std::uint64_t seed);

}  // namespace secular
