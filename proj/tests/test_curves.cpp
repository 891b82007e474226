#include <doctest.h>

#include <cmath>

#include "secular/boundary.hpp"
#include "secular/curves.hpp"
#include "secular/errors.hpp"
#include "secular/generators.hpp"
#include "secular/oracle.hpp"

using namespace secular;

namespace {

const Instance& golden() {
  static const Instance inst(SymmetricOperator(Matrix::diagonal(std::vector<double>{2, 1})), Vector{0, 1});
  return inst;
}

}  // namespace

TEST_CASE("geometric grid endpoints and spacing") {
  const auto g = geometric_grid(0.01, 1.0, 3);
  REQUIRE(g.size() == 3);
  CHECK(g[0] == 0.01);
  CHECK(std::abs(g[1] - 0.1) <= 1e-15);
  CHECK(g[2] == 1.0);
}

TEST_CASE("golden instance curve follows r + 2 sqrt(r)") {
  const auto samples = sample_curve(golden(), 1e-3, 0.95, 25);
  REQUIRE(samples.size() == 25);
  for (const auto& s : samples) {
    CHECK(std::abs(s.gamma - (s.r + 2.0 * std::sqrt(s.r))) <= 1e-9);
    CHECK(std::abs(s.gamma_prime - (1.0 + 1.0 / std::sqrt(s.r))) <= 1e-9);
    REQUIRE(s.g_inverse.has_value());
    CHECK(std::abs(s.gamma_prime - *s.g_inverse) <= 1e-12 * (1.0 + s.gamma_prime));
  }
  const auto minimal = sample_curve(golden(), 0.1, 0.9, 3);
  CHECK(minimal.size() == 3);
}

TEST_CASE("sample_curve rejects bad grids") {
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  CHECK(code([] { sample_curve(golden(), 0.1, 0.9, 2); }) == ErrorCode::TooFewSamples);
  CHECK(code([] { sample_curve(golden(), 0.1, 2.0, 5); }) == ErrorCode::OutOfRange);
  CHECK(code([] { sample_curve(golden(), 0.0, 0.5, 5); }) == ErrorCode::OutOfRange);
  try {
    sample_curve(golden(), 0.1, 1.0, 5);
    FAIL("expected OutOfRange");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("theta=1") != std::string::npos);
  }
}

TEST_CASE("infinite theta accepts wide grids") {
  const Instance inst = positive_instance_generator(4, 9);
  const auto samples = sample_curve(inst, 1e-2, 1e3, 12);
  CHECK(samples.size() == 12);
  const auto audit = audit_curve(samples);
  CHECK(audit.monotone_gamma);
  CHECK(audit.strictly_concave);
}

TEST_CASE("audit of the golden curve is all true") {
  const auto a = audit_curve(sample_curve(golden(), 0.01, 0.9, 20));
  CHECK(a.monotone_gamma);
  CHECK(a.strictly_concave);
  CHECK(a.monotone_g);
  CHECK(a.derivative_match <= 1e-5);
  CHECK(a.inverse_match <= 1e-12);
  CHECK(a.euler_max_residual <= 1e-9 * 2.0);
  CHECK(a.second_differences.size() == 18);
}

TEST_CASE("past theta the curve is affine and concavity fails") {
  const auto a = audit_curve(sample_radii(golden(), {1.5, 2.0, 3.0, 4.0, 6.0}));
  CHECK_FALSE(a.strictly_concave);
  CHECK_FALSE(a.monotone_g);
  for (const auto& s : a.samples) {
    CHECK(s.regime == Regime::HardCase);
    CHECK(std::abs(s.gamma - (2.0 * s.r + 1.0)) <= 1e-10);
  }
}

TEST_CASE("constant gamma samples are not monotone") {
  std::vector<CurveSample> samples(4);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    samples[k].r = 1.0 + static_cast<double>(k);
    samples[k].gamma = 2.0;
    samples[k].gamma_prime = 1.0;
    samples[k].fd_gamma_prime = 1.0;
  }
  const auto a = audit_curve(samples);
  CHECK_FALSE(a.monotone_gamma);
  CHECK_FALSE(a.strictly_concave);
  samples.resize(2);
  CHECK_THROWS_AS(audit_curve(samples), Error);
}

TEST_CASE("random instances pass the audit below theta") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = random_instance(2 + seed % 7, 11000 + seed);
    const double theta = diagnose_boundary(inst).theta;
    const double r_max = std::isinf(theta) ? 50.0 : 0.9 * theta;
    const auto a = audit_curve(sample_curve(inst, r_max * 1e-3, r_max, 15));
    CHECK(a.monotone_gamma);
    CHECK(a.strictly_concave);
    CHECK(a.monotone_g);
    CHECK(a.derivative_match <= 1e-5);
    CHECK(a.inverse_match <= 1e-12);
    CHECK(a.euler_max_residual <= 1e-9 * (1.0 + inst.z().norm()));
  }
}

TEST_CASE("plane counterexample: Euler equation fails without symmetry") {
  const auto rep = counterexample_r2();
  REQUIRE(rep.rows.size() == 3);
  for (const auto& row : rep.rows) {
    const double s = std::sqrt(row.r);
    CHECK(distance(row.x_hat, Vector{-s, 0}) <= 1e-6);
    CHECK(std::abs(row.gamma - (row.r + 2.0 * s)) <= 1e-8);
    CHECK(std::abs(row.fd_gamma_prime - (1.0 + 1.0 / s)) <= 1e-6);
    CHECK(std::abs(row.euler_residual[0]) <= 1e-6);
    CHECK(std::abs(row.euler_residual[1] - s) <= 1e-6);
  }
}

TEST_CASE("truncated sequence-space counterexample, z = e1") {
  const auto rep = counterexample_l2(8, 1, 0);
  CHECK(rep.theta == 1.0);
  CHECK(rep.fits[0].max_deviation <= 1e-9);
  CHECK(rep.truncation_gap <= 1e-10);
  CHECK(rep.oracle_max_gap <= 1e-6);
  CHECK_FALSE(rep.strictly_concave);
  bool affine = false;
  for (double d : rep.second_differences) affine = affine || d >= -kConcavityTolerance;
  CHECK(affine);
  CHECK(rep.distinct_maximizers_at_4 >= 2);
  for (const auto& row : rep.rows)
    if (row.r > 1.0) CHECK_FALSE(row.well_posed);
}

TEST_CASE("truncated sequence-space counterexample, z = e2") {
  const auto rep = counterexample_l2(8, 2, 0);
  CHECK(std::isinf(rep.theta));
  CHECK(rep.fits[1].max_deviation <= 1e-9);
  CHECK(rep.fits[2].max_deviation > 1.0);
  CHECK(rep.strictly_concave);
  CHECK(rep.truncation_gap <= 1e-10);
}
