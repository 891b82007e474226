#include "secular/generators.hpp"

#include <cmath>

#include "secular/errors.hpp"

namespace secular {

Vector random_gaussian(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

Vector random_on_sphere(std::size_t n, double r, Rng& rng) {
  Vector v = random_gaussian(n, rng);
  double norm = v.norm();
  while (norm == 0.0) {
    v = random_gaussian(n, rng);
    norm = v.norm();
  }
  return (std::sqrt(r) / norm) * v;
}

Matrix random_orthogonal(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix q(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (;;) {
      for (std::size_t i = 0; i < n; ++i) q(i, j) = normal(rng);
      // two passes of modified Gram-Schmidt
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < j; ++k) {
          double d = 0.0;
          for (std::size_t i = 0; i < n; ++i) d += q(i, k) * q(i, j);
          for (std::size_t i = 0; i < n; ++i) q(i, j) -= d * q(i, k);
        }
      }
      double norm = 0.0;
      for (std::size_t i = 0; i < n; ++i) norm += q(i, j) * q(i, j);
      norm = std::sqrt(norm);
      if (norm > 1e-8) {
        for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
        break;
      }
    }
  }
  return q;
}

SymmetricOperator operator_from_spectrum(const Matrix& q, const std::vector<double>& eigenvalues) {
  const std::size_t n = q.size();
  if (eigenvalues.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "eigenvalue count does not match basis size");
  }
  Matrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += q(i, k) * eigenvalues[k] * q(j, k);
      a(i, j) = a(j, i) = s;
    }
  return SymmetricOperator(std::move(a));
}

Instance random_instance(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = normal(rng);
  Vector z = random_gaussian(n, rng);
  return Instance(SymmetricOperator(std::move(a)), std::move(z));
}

Instance instance_from_spectrum(const std::vector<double>& eigenvalues,
                                const std::vector<double>& z_spectral, std::uint64_t seed) {
  Rng rng(seed);
  const Matrix q = random_orthogonal(eigenvalues.size(), rng);
  Vector zt{std::vector<double>(z_spectral)};
  return Instance(operator_from_spectrum(q, eigenvalues), q * zt);
}

}  // namespace secular
