#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "secular/errors.hpp"
#include "secular/generators.hpp"
#include "secular/resolvent.hpp"

using namespace secular;

namespace {

Instance diag_instance(std::vector<double> d, Vector z) {
  return Instance(SymmetricOperator(Matrix::diagonal(d)), std::move(z));
}

}  // namespace

TEST_CASE("spectral_resolvent: closed-form examples") {
  {
    const auto sol = spectral_resolvent(diag_instance({2, 1}, Vector{0, 1}), 3.0);
    CHECK(distance(sol.v_hat, Vector{0, -0.5}) < 1e-15);
    CHECK(sol.iterations == 0);
    CHECK(sol.residual <= 1e-10);
  }
  {
    const auto sol = spectral_resolvent(diag_instance({1, -3}, Vector{1, 0}), 4.0);
    CHECK(distance(sol.v_hat, Vector{-1.0 / 3.0, 0}) < 1e-15);
  }
  {
    const auto sol = spectral_resolvent(diag_instance({0, 0}, Vector{1, 0}), 1.0);
    CHECK(distance(sol.v_hat, Vector{-1, 0}) < 1e-15);
  }
}

TEST_CASE("spectral_resolvent matches Gaussian elimination on random instances") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance inst = random_instance(2 + seed % 7, seed);
    const double lambda = inst.op_norm() * 1.3 + 0.1;
    const Vector ref = testing::gaussian_solve(testing::shifted(inst.op().matrix(), lambda), inst.z());
    const auto sol = spectral_resolvent(inst, lambda);
    CHECK(distance(sol.v_hat, ref) <= 1e-12 * (1.0 + ref.norm()));
    CHECK(sol.residual <= 1e-10 * (1.0 + inst.z().norm()));
  }
}

TEST_CASE("resolvent rejects lambda at or below the operator norm") {
  const Instance inst = diag_instance({2, 1}, Vector{0, 1});
  for (double lambda : {2.0, 1.5, -3.0, 2.0 + 1e-13}) {
    try {
      spectral_resolvent(inst, lambda);
      FAIL("expected LambdaTooSmall");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::LambdaTooSmall);
    }
  }
  CHECK_THROWS_AS(g_value(inst, 2.0), Error);
  CHECK_THROWS_AS(contraction_resolvent(inst, 1.0, 1e-12), Error);
}

TEST_CASE("contraction_resolvent: examples") {
  {
    const auto sol = contraction_resolvent(diag_instance({2, 1}, Vector{0, 1}), 3.0, 1e-12);
    CHECK(distance(sol.v_hat, Vector{0, -0.5}) <= 1e-12 * 3.0 / (3.0 - 2.0));
    CHECK(sol.iterations > 0);
  }
  {
    // T = 0: x1 = -z / lambda is already the fixed point
    const auto sol = contraction_resolvent(diag_instance({0, 0}, Vector{1, 0}), 2.0, 1e-12);
    CHECK(distance(sol.v_hat, Vector{-0.5, 0}) == 0.0);
    CHECK(sol.iterations == 1);
  }
}

TEST_CASE("contraction steps shrink by at most ||T|| / lambda") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = random_instance(3 + seed % 5, 900 + seed);
    const double lambda = inst.op_norm() * (1.05 + 0.1 * static_cast<double>(seed % 4));
    const auto trace = contraction_resolvent_trace(inst, lambda, 1e-11);
    CHECK(trace.contraction_factor == doctest::Approx(inst.op_norm() / lambda));
    for (std::size_t k = 1; k < trace.step_norms.size(); ++k) {
      if (trace.step_norms[k - 1] == 0.0) continue;
      CHECK(trace.step_norms[k] / trace.step_norms[k - 1] <= trace.contraction_factor + 1e-10);
    }
    const auto ref = spectral_resolvent(inst, lambda);
    CHECK(distance(trace.solution.v_hat, ref.v_hat) <=
          10.0 * 1e-11 * lambda / (lambda - inst.op_norm()));
  }
}

TEST_CASE("contraction iteration cap") {
  CHECK(contraction_iteration_cap(0.0, 1e-12) == 64);
  CHECK(contraction_iteration_cap(0.5, 1e-3) == static_cast<int>(std::ceil(std::log(0.5e-3) / std::log(0.5))) + 64);
}

TEST_CASE("g_value: closed forms and decay") {
  CHECK(std::abs(g_value(diag_instance({2, 1}, Vector{0, 1}), 3.0) - 0.25) < 1e-15);
  CHECK(std::abs(g_value(diag_instance({1, -3}, Vector{1, 0}), 4.0) - 1.0 / 9.0) < 1e-15);

  const Instance inst = random_instance(5, 42);
  double prev = g_value(inst, inst.op_norm() + 1.0);
  for (double lambda = inst.op_norm() + 2.0; lambda < 1e6; lambda *= 2.0) {
    const double g = g_value(inst, lambda);
    CHECK(g < prev);
    prev = g;
  }
  const double big = 1e6;
  CHECK(std::abs(g_value(inst, big) * big * big / inst.z().squared_norm() - 1.0) < 1e-4);
}

TEST_CASE("g is strictly decreasing above the operator norm") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = random_instance(2 + seed % 7, 300 + seed);
    const double eps = 1e-3 * (1.0 + inst.op_norm());
    double prev = g_value(inst, inst.op_norm() + eps);
    for (int k = 1; k <= 200; ++k) {
      const double lambda = inst.op_norm() + eps + 10.0 * (1.0 + inst.op_norm()) * k / 200.0;
      const double g = g_value(inst, lambda);
      CHECK(g < prev);
      prev = g;
    }
  }
}

TEST_CASE("monotone derivative inequality for lambda Phi - J") {
  Rng rng(11);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance inst = random_instance(2 + seed % 6, 700 + seed);
    const double lambda = inst.op_norm() * (1.0 + 0.5 * (seed % 3)) + 0.01;
    for (int trial = 0; trial < 20; ++trial) {
      const Vector x = random_gaussian(inst.dim(), rng);
      const Vector v = random_gaussian(inst.dim(), rng);
      // (lambda Phi' - J')(y) = 2 lambda y - 2 (T y - z)
      auto grad = [&](const Vector& y) { return 2.0 * lambda * y - 2.0 * (apply(inst.op(), y) - inst.z()); };
      const Vector d = x - v;
      const double lhs = dot(grad(x) - grad(v), d);
      CHECK(lhs >= 2.0 * (lambda - inst.op_norm()) * d.squared_norm() - 1e-9);
    }
  }
}
