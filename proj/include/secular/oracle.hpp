#pragma once

// Independent brute-force maximizer of J over the sphere, used to cross-check
// the spectral solver and to probe non-symmetric operators where no spectral
// shortcut exists.

#include <cstdint>
#include <vector>

#include "secular/linalg.hpp"

namespace secular {

struct BruteForceOptions {
  int restarts = 8;
  /// Projected-gradient iterations per restart.
  int iterations = 200;
  std::uint64_t seed = 0;
  /// In dimension 2, also scan this many equally spaced angles and refine the
  /// best one by golden-section search. 0 disables the scan.
  std::size_t angular_grid = 1'000'000;
};

struct BruteForceResult {
  Vector best;
  double value = 0.0;
  /// Final point and value of every restart, in restart order.
  std::vector<Vector> restart_points;
  std::vector<double> restart_values;
};

/// Projected gradient ascent on ||x||^2 = r. Gradient (A + A^T) x - 2 z;
/// step halving (factor 0.5) from 1 / (2 ||A|| + 1) until J does not decrease.
BruteForceResult brute_force_max(const GeneralOperator& op, const Vector& z, double r,
                                 const BruteForceOptions& options = {});
BruteForceResult brute_force_max(const SymmetricOperator& op, const Vector& z, double r,
                                 const BruteForceOptions& options = {});

/// Restart end points whose value is within value_tol of the best, thinned so
/// that any two kept points are more than min_separation apart.
std::vector<Vector> distinct_maximizers(const BruteForceResult& result, double value_tol,
                                        double min_separation);

}  // namespace secular
