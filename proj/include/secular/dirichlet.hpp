#pragma once

// Finite-difference model of -u'' = mu (u + phi) on ]0, 1[ with u(0) = u(1) = 0,
// and its reduction to the abstract sphere problem.
//
// With the stiffness A = tridiag(-1, 2, -1) / h^2 and the energy form
// K = h A, the substitution x = K^{1/2} u maps
//   { u : h u^T A u = r }              onto  { x : ||x||^2 = r },
//   h (u^T u + 2 phi^T u)              onto  <T x, x> - 2 <z, x>,
// with T = A^{-1} and z = -sqrt(h) A^{-1/2} phi. The reduction is exact at
// the discrete level, so the curves psi/eta inherit everything proved for
// g/gamma.

#include <functional>
#include <vector>

#include "secular/curves.hpp"
#include "secular/instance.hpp"

namespace secular {

struct DirichletProblem {
  std::size_t n = 0;
  double h = 0.0;
  /// phi at the interior nodes x_i = i h, i = 1..n
  Vector phi;
  Matrix stiffness;
  Spectrum stiffness_spectrum;
  /// smallest stiffness eigenvalue
  double lambda1 = 0.0;
};

/// (2 / h^2) (1 - cos(pi h)), the first eigenvalue of the discrete Laplacian.
double discrete_lambda1(std::size_t n);

/// Throws OutOfRange for n < 3, DimensionMismatch for a wrong sample count,
/// ZeroPhi when phi vanishes.
DirichletProblem build_problem(std::size_t n, const Vector& phi_samples);
DirichletProblem build_problem(std::size_t n, const std::function<double(double)>& phi_fn);

/// phi = 1
Vector phi_constant(std::size_t n);
/// phi = sin(k pi x) at the nodes: exactly the k-th discrete eigenvector (unnormalized).
Vector phi_eigenmode(std::size_t n, int k);

struct DirichletSolution {
  double mu = 0.0;
  Vector u;
  /// h u^T A u
  double psi = 0.0;
  /// ||A u - mu (u + phi)||
  double pde_residual = 0.0;
};

/// u = mu (A - mu I)^{-1} phi by a tridiagonal solve. Throws MuOutOfRange
/// unless 0 < mu < lambda1 (1 - 1e-10).
DirichletSolution solve_u_mu(const DirichletProblem& p, double mu);

double psi_value(const DirichletProblem& p, double mu);
/// d psi / d mu = 2 h u'^T A u with u' = (A - mu I)^{-1} (u + phi).
double psi_derivative(const DirichletProblem& p, double mu);

struct EnergyTransform {
  Matrix sqrt_K;
  Matrix inv_sqrt_K;
  /// (A^{-1}, -sqrt(h) A^{-1/2} phi)
  Instance abstract;
};

EnergyTransform build_transform(const DirichletProblem& p);

Vector to_energy_coordinates(const EnergyTransform& t, const Vector& u);
Vector from_energy_coordinates(const EnergyTransform& t, const Vector& x);

/// Threshold of psi: theta of the transformed instance (+inf when phi has a
/// component along the first eigenvector).
double psi_threshold(const EnergyTransform& t);

/// h (u^T u + 2 phi^T u)
double dirichlet_functional(const DirichletProblem& p, const Vector& u);
/// h u^T A u
double dirichlet_energy(const DirichletProblem& p, const Vector& u);

/// mu in ]0, lambda1[ with psi(mu) = r, by bisection with Newton polish.
/// Throws OutOfRange unless 0 < r < delta.
double invert_psi(const DirichletProblem& p, double r, double delta);
double invert_psi(const DirichletProblem& p, double r);

struct EtaSample {
  double r = 0.0;
  double eta = 0.0;
  double eta_prime = 0.0;
  /// psi^{-1}(r), computed on the PDE side
  double mu = 0.0;
  /// ||A w - (1 / eta') (w + phi)||
  double c5_residual = 0.0;
  /// ||w_r - u_{psi^{-1}(r)}||
  double w_gap = 0.0;
  /// |eta'(r) psi^{-1}(r) - 1|
  double product_error = 0.0;
  /// |Phi(w_r) - eta(r)|
  double functional_gap = 0.0;
};

struct EtaCurveReport {
  double delta = 0.0;
  std::vector<EtaSample> samples;
  AuditReport audit;
  double max_product_error = 0.0;
  double max_c5_residual = 0.0;
  double max_w_gap = 0.0;
};

/// Throws OutOfRange when the grid leaves ]0, delta[ or is not increasing.
EtaCurveReport eta_curve(const DirichletProblem& p, const std::vector<double>& r_grid);

}  // namespace secular
