#pragma once

// Maximization of J(x) = <T(x), x> - 2 <z, x> over the sphere ||x||^2 = r.
//
// For r below the boundary threshold theta the maximizer is the resolvent
// solution v_mu with g(mu) = r, so the multiplier doubles as gamma'(r). Past
// theta the solver continues along the usual trust-region path: the secular
// equation is solved on ]lambda_1, ||T||] while that is possible, and once the
// multiplier reaches lambda_1 the maximizer picks up a top-eigenvector
// component (the "hard case"), where uniqueness is lost.

#include <cstdint>
#include <string_view>

#include "secular/instance.hpp"

namespace secular {

/// J(x) = <T(x), x> - 2 <z, x>
double eval_J(const GeneralOperator& op, const Vector& z, const Vector& x);
double eval_J(const SymmetricOperator& op, const Vector& z, const Vector& x);

/// sum_i zt_i^2 / (lambda_i - mu)^2 for mu > lambda_1. Throws MuAtEigenvalue
/// within 1e-12 (1 + ||T||) of an eigenvalue and OutOfRange below lambda_1.
double secular_value(const Instance& inst, double mu);

/// d/dmu of secular_value: 2 sum_i zt_i^2 / (mu - lambda_i)^3 with a minus sign.
double secular_derivative(const Instance& inst, double mu);

/// The unique mu > ||T|| with g(mu) = r. Bracketing by geometric growth and
/// shrinkage of the offset from ||T||, bisection to 1e-13 relative, then
/// Newton polish. Throws NonPositiveRadius for r <= 0 and OutOfRange for
/// r >= theta.
double invert_g(const Instance& inst, double r);

enum class Regime {
  /// r < theta: mu > ||T||, unique maximizer v_mu.
  Interior,
  /// r >= theta but the secular equation still has a root mu in ]lambda_1, ||T||].
  /// Only occurs when -lambda_n > lambda_1. The maximizer is unique.
  BeyondThreshold,
  /// mu = lambda_1; the maximizer carries a top-eigenspace component.
  HardCase,
};

std::string_view to_string(Regime regime);

struct SphericalSolution {
  double r = 0.0;
  Vector x_hat;
  /// Lagrange multiplier mu, equal to gamma'(r).
  double multiplier = 0.0;
  /// J(x_hat) = gamma(r)
  double gamma = 0.0;
  Regime regime = Regime::Interior;
  /// ||T x_hat - mu x_hat - z||
  double euler_residual = 0.0;
  bool well_posed = true;
};

/// Throws NonPositiveRadius for r <= 0.
SphericalSolution maximize_on_sphere(const Instance& inst, double r);

double gamma_value(const Instance& inst, double r);
/// gamma'(r) = g^{-1}(r); requires 0 < r < theta.
double gamma_prime(const Instance& inst, double r);

/// Both sides of gamma(r) - J(x) = <(mu I - T)(x - x_hat), x - x_hat> for x
/// on the sphere, and the growth modulus lower bound (mu - lambda_1) ||x - x_hat||^2.
struct GrowthTerms {
  double gap = 0.0;
  double quadratic_form = 0.0;
  double lower_bound = 0.0;
};

GrowthTerms growth_terms(const Instance& inst, const SphericalSolution& sol, const Vector& x);

struct WellposednessReport {
  double r = 0.0;
  double multiplier = 0.0;
  double gamma = 0.0;
  int samples = 0;
  /// Tolerance 1e-9 (1 + |gamma|) applied to both checks.
  double tolerance = 0.0;
  double max_identity_violation = 0.0;
  /// max over samples of lower_bound - gap (<= 0 when the bound holds)
  double max_bound_violation = 0.0;
  int violations = 0;
};

/// Samples uniformly on S_r and checks the quadratic growth identity and the
/// bound. Requires 0 < r < theta.
WellposednessReport wellposedness_check(const Instance& inst, double r, int samples,
                                        std::uint64_t seed);

}  // namespace secular
