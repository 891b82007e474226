#include "secular/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "secular/errors.hpp"
#include "secular/generators.hpp"
#include "secular/spherical.hpp"

namespace secular {

namespace {

Vector project(const Vector& x, double r) { return (std::sqrt(r) / x.norm()) * x; }

struct Ascent {
  Vector x;
  double value;
};

Ascent ascend(const GeneralOperator& op, const Matrix& sym2, const Vector& z, double r,
              Vector x, double step0, int iterations) {
  double value = eval_J(op, z, x);
  for (int it = 0; it < iterations; ++it) {
    const Vector grad = sym2 * x - 2.0 * z;
    // tangential part of the gradient
    const Vector tangent = grad - (dot(grad, x) / r) * x;
    const double tnorm2 = tangent.squared_norm();
    if (tnorm2 <= 1e-30 * (1.0 + grad.squared_norm())) break;

    double step = step0;
    bool moved = false;
    while (step > 1e-20 * step0) {
      const Vector y = project(x + step * grad, r);
      const double vy = eval_J(op, z, y);
      if (vy >= value) {
        moved = vy > value || distance(x, y) > 0.0;
        x = y;
        value = vy;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return {std::move(x), value};
}

// Golden-section refinement of the angle around a grid optimum.
Ascent refine_angle(const GeneralOperator& op, const Vector& z, double r, double lo, double hi) {
  const double rad = std::sqrt(r);
  auto point = [&](double phi) { return Vector{rad * std::cos(phi), rad * std::sin(phi)}; };
  auto f = [&](double phi) { return eval_J(op, z, point(phi)); };
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - ratio * (b - a), d = a + ratio * (b - a);
  double fc = f(c), fd = f(d);
  for (int k = 0; k < 200 && b - a > 1e-16 * (1.0 + std::abs(a)); ++k) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
    }
  }
  const double phi = fc >= fd ? c : d;
  return {point(phi), f(phi)};
}

}  // namespace

BruteForceResult brute_force_max(const GeneralOperator& op, const Vector& z, double r,
                                 const BruteForceOptions& options) {
  if (op.dim() != z.dim()) throw Error(ErrorCode::DimensionMismatch, "operator/z dimension mismatch");
  if (!(r > 0.0)) throw Error(ErrorCode::NonPositiveRadius, "r must be positive");
  const std::size_t n = op.dim();
  const Matrix& a = op.matrix();
  Matrix sym2(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sym2(i, j) = a(i, j) + a(j, i);
  const double step0 = 1.0 / (2.0 * spectral_norm(op) + 1.0);

  BruteForceResult res;
  Rng rng(options.seed);
  const int restarts = std::max(1, options.restarts);
  for (int k = 0; k < restarts; ++k) {
    Ascent run = ascend(op, sym2, z, r, random_on_sphere(n, r, rng), step0, options.iterations);
    res.restart_points.push_back(run.x);
    res.restart_values.push_back(run.value);
    if (k == 0 || run.value > res.value) {
      res.best = run.x;
      res.value = run.value;
    }
  }

  if (n == 2 && options.angular_grid > 0) {
    const double rad = std::sqrt(r);
    const double h = 2.0 * std::numbers::pi / static_cast<double>(options.angular_grid);
    double best_phi = 0.0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < options.angular_grid; ++k) {
      const double phi = h * static_cast<double>(k);
      const double v = eval_J(op, z, Vector{rad * std::cos(phi), rad * std::sin(phi)});
      if (v > best_val) {
        best_val = v;
        best_phi = phi;
      }
    }
    Ascent refined = refine_angle(op, z, r, best_phi - h, best_phi + h);
    if (refined.value > res.value) {
      res.best = refined.x;
      res.value = refined.value;
    }
  }
  return res;
}

BruteForceResult brute_force_max(const SymmetricOperator& op, const Vector& z, double r,
                                 const BruteForceOptions& options) {
  return brute_force_max(op.as_general(), z, r, options);
}

std::vector<Vector> distinct_maximizers(const BruteForceResult& result, double value_tol,
                                        double min_separation) {
  std::vector<Vector> out;
  for (std::size_t k = 0; k < result.restart_points.size(); ++k) {
    if (result.restart_values[k] < result.value - value_tol) continue;
    bool fresh = true;
    for (const Vector& kept : out)
      if (distance(kept, result.restart_points[k]) <= min_separation) fresh = false;
    if (fresh) out.push_back(result.restart_points[k]);
  }
  return out;
}

}  // namespace secular
