#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "secular/boundary.hpp"
#include "secular/dirichlet.hpp"
#include "secular/errors.hpp"
#include "secular/generators.hpp"
#include "secular/spherical.hpp"

using namespace secular;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("first eigenvalue matches the closed form") {
  const auto p = build_problem(99, phi_constant(99));
  const double exact = discrete_lambda1(99);
  CHECK(std::abs(p.lambda1 - exact) <= 1e-9 * exact);
  CHECK(std::abs(exact - std::numbers::pi * std::numbers::pi) < 1e-2);
}

TEST_CASE("stiffness assembly for n = 3") {
  const auto p = build_problem(3, phi_constant(3));
  CHECK(p.h == 0.25);
  const double s = 16.0;
  const double expected[3][3] = {{2 * s, -s, 0}, {-s, 2 * s, -s}, {0, -s, 2 * s}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(p.stiffness(i, j) == expected[i][j]);
}

TEST_CASE("build_problem input errors") {
  CHECK(code_of([] { build_problem(2, phi_constant(2)); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { build_problem(5, phi_constant(4)); }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([] { build_problem(5, Vector(5)); }) == ErrorCode::ZeroPhi);
  CHECK(code_of([] { build_problem(5, [](double) { return 0.0; }); }) == ErrorCode::ZeroPhi);
  const auto p = build_problem(7, [](double x) { return x * (1 - x); });
  CHECK(std::abs(p.phi[0] - 0.125 * 0.875) <= 1e-15);
}

TEST_CASE("tridiagonal solve agrees with Gaussian elimination") {
  const auto p = build_problem(30, [](double x) { return std::exp(x) - 2.0 * x; });
  for (double frac : {0.1, 0.5, 0.9}) {
    const double mu = frac * p.lambda1;
    const auto sol = solve_u_mu(p, mu);
    const Vector ref = testing::gaussian_solve(testing::shifted(p.stiffness, mu), mu * p.phi);
    CHECK(distance(sol.u, ref) <= 1e-10 * (1.0 + ref.norm()));
    CHECK(sol.psi > 0.0);
    CHECK(sol.pde_residual <= 1e-9 * (1.0 + p.phi.norm()));
  }
}

TEST_CASE("solve_u_mu: limits and residual") {
  const auto p = build_problem(99, phi_constant(99));
  CHECK(solve_u_mu(p, p.lambda1 / 2).pde_residual <= 1e-10);
  const auto tiny = solve_u_mu(p, 1e-10);
  CHECK(tiny.u.norm() < 1e-8);
  CHECK(tiny.psi < 1e-15);
  CHECK(psi_value(p, p.lambda1 * (1 - 1e-8)) > 1e6);
  CHECK(code_of([&] { solve_u_mu(p, 0.0); }) == ErrorCode::MuOutOfRange);
  CHECK(code_of([&] { solve_u_mu(p, p.lambda1); }) == ErrorCode::MuOutOfRange);
  CHECK(code_of([&] { solve_u_mu(p, -1.0); }) == ErrorCode::MuOutOfRange);
}

TEST_CASE("psi is increasing and its derivative matches finite differences") {
  const auto p = build_problem(49, phi_constant(49));
  double prev = 0.0;
  for (int k = 1; k < 100; ++k) {
    const double mu = p.lambda1 * k / 100.0;
    const double psi = psi_value(p, mu);
    CHECK(psi > prev);
    prev = psi;
  }
  const double mu = 0.4 * p.lambda1, h = 1e-5 * mu;
  const double fd = (psi_value(p, mu + h) - psi_value(p, mu - h)) / (2 * h);
  CHECK(std::abs(fd - psi_derivative(p, mu)) <= 1e-6 * fd);
}

TEST_CASE("invert_psi round trip") {
  const auto p = build_problem(49, phi_constant(49));
  for (double frac : {1e-3, 0.2, 0.7, 0.99, 0.999999}) {
    const double mu = frac * p.lambda1;
    CHECK(std::abs(invert_psi(p, psi_value(p, mu)) - mu) <= 1e-10 * mu);
  }
  CHECK(code_of([&] { invert_psi(p, 0.0); }) == ErrorCode::OutOfRange);
}

TEST_CASE("energy transform fidelity") {
  const auto p = build_problem(20, [](double x) { return 1.0 + x * x; });
  const auto t = build_transform(p);
  CHECK(std::abs(t.abstract.op_norm() * p.lambda1 - 1.0) <= 1e-10);
  Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    const Vector u = random_gaussian(p.n, rng);
    const Vector x = to_energy_coordinates(t, u);
    CHECK(distance(from_energy_coordinates(t, x), u) <= 1e-10 * u.norm());
    const double phi_u = dirichlet_functional(p, u);
    CHECK(std::abs(phi_u - eval_J(t.abstract.op(), t.abstract.z(), x)) <= 1e-10 * (1.0 + std::abs(phi_u)));
    CHECK(std::abs(x.squared_norm() - dirichlet_energy(p, u)) <= 1e-10 * x.squared_norm());
  }
}

TEST_CASE("threshold: infinite for phi = 1, finite for the second eigenmode") {
  const auto one = build_problem(49, phi_constant(49));
  CHECK(std::isinf(psi_threshold(build_transform(one))));

  const std::size_t n = 49;
  const auto p = build_problem(n, phi_eigenmode(n, 2));
  const double delta = psi_threshold(build_transform(p));
  // phi = c e2 with c^2 = (n+1)/2 for the unit eigenvector e2
  const double h = p.h;
  const double lam1 = p.lambda1;
  const double lam2 = 2.0 / (h * h) * (1.0 - std::cos(2.0 * std::numbers::pi * h));
  const double c2 = static_cast<double>(n + 1) / 2.0;
  const double expected = h * c2 / lam2 / std::pow(1.0 / lam2 - 1.0 / lam1, 2.0);
  CHECK(std::abs(delta - expected) <= 1e-8 * expected);

  const auto rep = eta_curve(p, {0.1 * delta, 0.5 * delta, 0.9 * delta});
  CHECK(rep.max_product_error <= 1e-8);
  CHECK(code_of([&] { eta_curve(p, {0.5 * delta, 1.1 * delta}); }) == ErrorCode::OutOfRange);
  CHECK(code_of([&] { eta_curve(p, {0.5 * delta, 0.4 * delta}); }) == ErrorCode::OutOfRange);
}

TEST_CASE("eta curve for phi = 1") {
  const auto p = build_problem(49, phi_constant(49));
  const auto rep = eta_curve(p, geometric_grid(1e-3, 10.0, 20));
  CHECK(rep.audit.monotone_gamma);
  CHECK(rep.audit.strictly_concave);
  CHECK(rep.audit.monotone_g);
  CHECK(rep.max_product_error <= 1e-8);
  CHECK(rep.max_c5_residual <= 1e-8 * (1.0 + p.phi.norm()));
  CHECK(rep.max_w_gap <= 1e-8);
  for (const auto& s : rep.samples) CHECK(s.functional_gap <= 1e-9 * (1.0 + std::abs(s.eta)));
}

TEST_CASE("maximizers move continuously with r") {
  const auto p = build_problem(49, phi_constant(49));
  const auto t = build_transform(p);
  const double r = 1.0;
  const Vector w = from_energy_coordinates(t, maximize_on_sphere(t.abstract, r).x_hat);
  double dr = 1e-2;
  double prev = distance(from_energy_coordinates(t, maximize_on_sphere(t.abstract, r + dr).x_hat), w);
  for (int k = 0; k < 3; ++k) {
    dr *= 0.5;
    const double gap = distance(from_energy_coordinates(t, maximize_on_sphere(t.abstract, r + dr).x_hat), w);
    CHECK(gap <= 0.55 * prev);
    prev = gap;
  }
}
