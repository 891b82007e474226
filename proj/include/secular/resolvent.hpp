#pragma once

#include <vector>

#include "secular/instance.hpp"

namespace secular {

/// Solution of T(x) - lambda x = z for lambda > ||T||.
struct ResolventSolution {
  double lambda = 0.0;
  Vector v_hat;
  /// ||T v - lambda v - z||
  double residual = 0.0;
  /// Number of fixed-point updates; 0 for the spectral backend.
  int iterations = 0;
};

/// Result of the contraction backend, with the step history kept for audits.
struct ContractionTrace {
  ResolventSolution solution;
  /// ||x_{k+1} - x_k|| for every update performed, including the final one.
  std::vector<double> step_norms;
  /// ||T|| / lambda
  double contraction_factor = 0.0;
};

/// Throws LambdaTooSmall unless lambda > ||T|| + 1e-12 (1 + ||T||).
void require_resolvent_lambda(const Instance& inst, double lambda);

/// v = Q diag(1 / (lambda_i - lambda)) Q^T z
ResolventSolution spectral_resolvent(const Instance& inst, double lambda);

/// Fixed-point iteration x <- (T(x) - z) / lambda from x0 = 0, stopped once
/// ||x_{k+1} - x_k|| <= tol. Iteration cap: ceil(log(tol (1-q)) / log q) + 64
/// with q = ||T|| / lambda.
ContractionTrace contraction_resolvent_trace(const Instance& inst, double lambda, double tol);
ResolventSolution contraction_resolvent(const Instance& inst, double lambda, double tol);

int contraction_iteration_cap(double q, double tol);

/// g(lambda) = ||v_lambda||^2, evaluated from the spectral sum.
double g_value(const Instance& inst, double lambda);

}  // namespace secular
