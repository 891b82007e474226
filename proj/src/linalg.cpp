#include "secular/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "secular/errors.hpp"

namespace secular {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
}

}  // namespace

// ---------------------------------------------------------------- Vector

Vector::Vector(std::size_t dim) : data_(dim, 0.0) {
  if (dim == 0) throw Error(ErrorCode::DimensionMismatch, "vector dimension must be >= 1");
}

Vector::Vector(std::vector<double> entries) : data_(std::move(entries)) {
  if (data_.empty()) throw Error(ErrorCode::DimensionMismatch, "vector dimension must be >= 1");
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw Error(ErrorCode::NonFinite, "vector entry " + std::to_string(i) + " is not finite");
    }
  }
}

Vector::Vector(std::initializer_list<double> entries) : Vector(std::vector<double>(entries)) {}

Vector Vector::unit(std::size_t dim, std::size_t index) {
  Vector e(dim);
  e.data_.at(index) = 1.0;
  return e;
}

double Vector::squared_norm() const { return dot(*this, *this); }

double Vector::norm() const {
  // scaled to avoid overflow for large entries
  double scale = 0.0;
  for (double v : data_) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (double v : data_) sum += (v / scale) * (v / scale);
  return scale * std::sqrt(sum);
}

bool Vector::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Vector& Vector::operator+=(const Vector& other) {
  require_same_dim(dim(), other.dim(), "vector add");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  require_same_dim(dim(), other.dim(), "vector subtract");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Vector& Vector::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

double dot(const Vector& a, const Vector& b) {
  require_same_dim(a.dim(), b.dim(), "dot");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) sum += a[i] * b[i];
  return sum;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator-(Vector a) { return a *= -1.0; }
Vector operator*(double s, Vector v) { return v *= s; }
double distance(const Vector& a, const Vector& b) { return (a - b).norm(); }

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw Error(ErrorCode::SchemaError, "matrix has no rows");
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      std::ostringstream msg;
      msg << "row " << i << " has " << rows[i].size() << " entries, expected " << n;
      throw Error(ErrorCode::SchemaError, msg.str());
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(rows[i][j])) {
        std::ostringstream msg;
        msg << "matrix entry (" << i << ", " << j << ") is not finite";
        throw Error(ErrorCode::NonFinite, msg.str());
      }
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

std::vector<std::vector<double>> Matrix::rows() const {
  std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_dim(a.size(), b.size(), "matrix product");
  const std::size_t n = a.size();
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_dim(a.size(), b.size(), "matrix difference");
  Matrix c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

Vector operator*(const Matrix& a, const Vector& x) {
  require_same_dim(a.size(), x.dim(), "matrix-vector product");
  Vector y(x.dim());
  for (std::size_t i = 0; i < a.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

// ---------------------------------------------------------------- operators

GeneralOperator::GeneralOperator(Matrix m) : m_(std::move(m)) {
  if (m_.size() == 0) throw Error(ErrorCode::SchemaError, "operator must have dimension >= 1");
}

SymmetricOperator::SymmetricOperator(Matrix m) : m_(std::move(m)) {
  if (m_.size() == 0) throw Error(ErrorCode::SchemaError, "operator must have dimension >= 1");
  const double tol = 1e-12 * (1.0 + m_.max_abs());
  double worst = 0.0;
  std::size_t wi = 0, wj = 0;
  for (std::size_t i = 0; i < m_.size(); ++i)
    for (std::size_t j = i + 1; j < m_.size(); ++j) {
      const double d = std::abs(m_(i, j) - m_(j, i));
      if (d > worst) {
        worst = d;
        wi = i;
        wj = j;
      }
    }
  if (worst > tol) {
    std::ostringstream msg;
    msg << "operator is not symmetric: T[" << wi << "][" << wj << "]=" << m_(wi, wj) << " but T["
        << wj << "][" << wi << "]=" << m_(wj, wi);
    throw Error(ErrorCode::AsymmetricOperator, msg.str());
  }
}

Vector apply(const GeneralOperator& op, const Vector& x) { return op.matrix() * x; }
Vector apply(const SymmetricOperator& op, const Vector& x) { return op.matrix() * x; }

// ---------------------------------------------------------------- spectrum

Vector Spectrum::eigenvector(std::size_t k) const {
  Vector v(dim());
  for (std::size_t i = 0; i < dim(); ++i) v[i] = vectors(i, k);
  return v;
}

Vector Spectrum::to_spectral(const Vector& x) const {
  require_same_dim(dim(), x.dim(), "to_spectral");
  Vector c(dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) s += vectors(i, k) * x[i];
    c[k] = s;
  }
  return c;
}

Vector Spectrum::from_spectral(const Vector& c) const { return vectors * c; }

Spectrum eigendecompose(const SymmetricOperator& op) {
  const std::size_t n = op.dim();
  Matrix a = op.matrix();
  // Work on the exactly symmetric average; the constructor already bounded the
  // asymmetry, so this only removes round-off noise.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (a(i, j) + a(j, i));
  Matrix v = Matrix::identity(n);

  const double threshold = 1e-14 * a.frobenius_norm();
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_norm() > threshold) {
    if (sweep++ == kJacobiMaxSweeps) {
      throw Error(ErrorCode::NonConvergence,
                  "Jacobi eigensolver did not converge within " +
                      std::to_string(kJacobiMaxSweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Symmetric Schur decomposition of the 2x2 block.
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;

        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  Spectrum spec;
  spec.values.resize(n);
  spec.vectors = Matrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    spec.values[k] = a(src, src);
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(v(i, src)) > std::abs(v(pivot, src)) + 1e-12) pivot = i;
    const double sign = v(pivot, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) spec.vectors(i, k) = sign * v(i, src);
  }
  return spec;
}

double operator_norm(const Spectrum& spectrum) {
  if (spectrum.values.empty()) return 0.0;
  return std::max(std::abs(spectrum.values.front()), std::abs(spectrum.values.back()));
}

double orthonormality_error(const Spectrum& spectrum) {
  const Matrix& q = spectrum.vectors;
  const Matrix gram = q.transpose() * q;
  return (gram - Matrix::identity(q.size())).max_abs();
}

double reconstruction_error(const SymmetricOperator& a, const Spectrum& spectrum) {
  const Matrix& q = spectrum.vectors;
  const Matrix lam = Matrix::diagonal(spectrum.values);
  return (a.matrix() - q * lam * q.transpose()).max_abs();
}

double spectral_norm(const GeneralOperator& op) {
  const Matrix& a = op.matrix();
  const SymmetricOperator gram(a.transpose() * a);
  const Spectrum s = eigendecompose(gram);
  return std::sqrt(std::max(0.0, s.values.front()));
}

}  // namespace secular
