#pragma once

// Dense real linear algebra used throughout the library: vectors, square
// operators, and the symmetric eigendecomposition everything else rests on.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace secular {

/// Finite real vector of dimension >= 1.
class Vector {
 public:
  Vector() = default;
  /// Zero vector of the given dimension.
  explicit Vector(std::size_t dim);
  /// Throws NonFinite on NaN/Inf entries and DimensionMismatch when empty.
  explicit Vector(std::vector<double> entries);
  Vector(std::initializer_list<double> entries);

  static Vector unit(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return data_.size(); }
  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }
  std::span<const double> entries() const noexcept { return data_; }
  const std::vector<double>& raw() const noexcept { return data_; }

  double norm() const;
  double squared_norm() const;
  bool all_finite() const;

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(double s);

 private:
  std::vector<double> data_;
};

double dot(const Vector& a, const Vector& b);
Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator-(Vector a);
Vector operator*(double s, Vector v);
double distance(const Vector& a, const Vector& b);

/// Dense square matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n);
  /// Throws SchemaError for ragged/empty rows and NonFinite for NaN/Inf.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }

  Matrix transpose() const;
  double max_abs() const;
  double frobenius_norm() const;
  std::vector<std::vector<double>> rows() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);

/// Arbitrary square operator; used where symmetry must not be assumed.
class GeneralOperator {
 public:
  explicit GeneralOperator(Matrix m);
  const Matrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.size(); }

 private:
  Matrix m_;
};

/// Square operator whose matrix passed the symmetry check
///   max |A_ij - A_ji| <= 1e-12 (1 + max |A_ij|).
/// The matrix is stored as given; it is never symmetrized.
class SymmetricOperator {
 public:
  /// Throws AsymmetricOperator naming the worst (row, col) pair.
  explicit SymmetricOperator(Matrix m);
  const Matrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.size(); }
  GeneralOperator as_general() const { return GeneralOperator(m_); }

 private:
  Matrix m_;
};

Vector apply(const GeneralOperator& op, const Vector& x);
Vector apply(const SymmetricOperator& op, const Vector& x);

/// Eigenvalues sorted descending with orthonormal eigenvectors stored as the
/// columns of `vectors`.
struct Spectrum {
  std::vector<double> values;
  Matrix vectors;

  std::size_t dim() const noexcept { return values.size(); }
  Vector eigenvector(std::size_t k) const;
  /// Q^T x
  Vector to_spectral(const Vector& x) const;
  /// Q c
  Vector from_spectral(const Vector& c) const;
};

inline constexpr int kJacobiMaxSweeps = 100;

/// Cyclic Jacobi. Stops once the off-diagonal Frobenius norm drops below
/// 1e-14 ||A||_F; throws NonConvergence after kJacobiMaxSweeps sweeps.
/// Eigenvector signs are normalized so the largest-magnitude entry is positive.
Spectrum eigendecompose(const SymmetricOperator& a);

/// max(|lambda_1|, |lambda_n|)
double operator_norm(const Spectrum& spectrum);

/// ||Q^T Q - I||_max
double orthonormality_error(const Spectrum& spectrum);
/// ||A - Q diag(values) Q^T||_max
double reconstruction_error(const SymmetricOperator& a, const Spectrum& spectrum);

/// Largest singular value via the eigendecomposition of A^T A.
double spectral_norm(const GeneralOperator& op);

}  // namespace secular
