#include "secular/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "secular/boundary.hpp"
#include "secular/errors.hpp"
#include "secular/generators.hpp"
#include "secular/spherical.hpp"

namespace secular {

namespace {

// Thomas algorithm for (A - shift I) y = rhs, A = tridiag(-1, 2, -1) / h^2.
Vector shifted_tridiagonal_solve(std::size_t n, double h, double shift, const Vector& rhs) {
  const double off = -1.0 / (h * h);
  const double diag = 2.0 / (h * h) - shift;
  std::vector<double> c(n), d(n);
  c[0] = off / diag;
  d[0] = rhs[0] / diag;
  for (std::size_t i = 1; i < n; ++i) {
    const double denom = diag - off * c[i - 1];
    c[i] = off / denom;
    d[i] = (rhs[i] - off * d[i - 1]) / denom;
  }
  Vector y(n);
  y[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) y[i] = d[i] - c[i] * y[i + 1];
  return y;
}

Vector tridiagonal_apply(std::size_t n, double h, const Vector& u) {
  const double s = 1.0 / (h * h);
  Vector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = 2.0 * u[i];
    if (i > 0) v -= u[i - 1];
    if (i + 1 < n) v -= u[i + 1];
    out[i] = s * v;
  }
  return out;
}

void require_mu(const DirichletProblem& p, double mu) {
  if (!(mu > 0.0) || !(mu < p.lambda1 * (1.0 - 1e-10))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "mu=" << mu << " must lie in ]0, lambda1=" << p.lambda1 << "[";
    throw Error(ErrorCode::MuOutOfRange, msg.str());
  }
}

Matrix spectral_function(const Spectrum& s, const std::function<double(double)>& f) {
  const std::size_t n = s.dim();
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < n; ++k) v += s.vectors(i, k) * f(s.values[k]) * s.vectors(j, k);
      out(i, j) = out(j, i) = v;
    }
  return out;
}

}  // namespace

double discrete_lambda1(std::size_t n) {
  const double h = 1.0 / static_cast<double>(n + 1);
  return 2.0 / (h * h) * (1.0 - std::cos(std::numbers::pi * h));
}

DirichletProblem build_problem(std::size_t n, const Vector& phi_samples) {
  if (n < 3) throw Error(ErrorCode::OutOfRange, "the grid needs at least 3 interior points");
  if (phi_samples.dim() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "phi has " + std::to_string(phi_samples.dim()) + " samples, expected " +
                    std::to_string(n));
  }
  if (phi_samples.norm() == 0.0) throw Error(ErrorCode::ZeroPhi, "phi must not vanish identically");

  DirichletProblem p;
  p.n = n;
  p.h = 1.0 / static_cast<double>(n + 1);
  p.phi = phi_samples;
  p.stiffness = Matrix(n);
  const double s = 1.0 / (p.h * p.h);
  for (std::size_t i = 0; i < n; ++i) {
    p.stiffness(i, i) = 2.0 * s;
    if (i + 1 < n) p.stiffness(i, i + 1) = p.stiffness(i + 1, i) = -s;
  }
  p.stiffness_spectrum = eigendecompose(SymmetricOperator(p.stiffness));
  p.lambda1 = p.stiffness_spectrum.values.back();
  return p;
}

DirichletProblem build_problem(std::size_t n, const std::function<double(double)>& phi_fn) {
  if (n < 3) throw Error(ErrorCode::OutOfRange, "the grid needs at least 3 interior points");
  const double h = 1.0 / static_cast<double>(n + 1);
  std::vector<double> samples(n);
  for (std::size_t i = 0; i < n; ++i) samples[i] = phi_fn(h * static_cast<double>(i + 1));
  return build_problem(n, Vector(std::move(samples)));
}

Vector phi_constant(std::size_t n) { return Vector(std::vector<double>(n, 1.0)); }

Vector phi_eigenmode(std::size_t n, int k) {
  const double h = 1.0 / static_cast<double>(n + 1);
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = std::sin(k * std::numbers::pi * h * static_cast<double>(i + 1));
  return v;
}

DirichletSolution solve_u_mu(const DirichletProblem& p, double mu) {
  require_mu(p, mu);
  DirichletSolution sol;
  sol.mu = mu;
  sol.u = shifted_tridiagonal_solve(p.n, p.h, mu, mu * p.phi);
  const Vector au = tridiagonal_apply(p.n, p.h, sol.u);
  sol.psi = p.h * dot(sol.u, au);
  sol.pde_residual = (au - mu * (sol.u + p.phi)).norm();
  return sol;
}

double psi_value(const DirichletProblem& p, double mu) { return solve_u_mu(p, mu).psi; }

double psi_derivative(const DirichletProblem& p, double mu) {
  const DirichletSolution sol = solve_u_mu(p, mu);
  const Vector du = shifted_tridiagonal_solve(p.n, p.h, mu, sol.u + p.phi);
  return 2.0 * p.h * dot(du, tridiagonal_apply(p.n, p.h, sol.u));
}

EnergyTransform build_transform(const DirichletProblem& p) {
  const Spectrum& s = p.stiffness_spectrum;
  const double h = p.h;
  Matrix sqrt_k = spectral_function(s, [h](double a) { return std::sqrt(h * a); });
  Matrix inv_sqrt_k = spectral_function(s, [h](double a) { return 1.0 / std::sqrt(h * a); });
  Matrix inv_a = spectral_function(s, [](double a) { return 1.0 / a; });
  const Matrix inv_sqrt_a = spectral_function(s, [](double a) { return 1.0 / std::sqrt(a); });
  const Vector z = (-std::sqrt(h)) * (inv_sqrt_a * p.phi);
  return EnergyTransform{std::move(sqrt_k), std::move(inv_sqrt_k),
                         Instance(SymmetricOperator(std::move(inv_a)), z)};
}

Vector to_energy_coordinates(const EnergyTransform& t, const Vector& u) { return t.sqrt_K * u; }
Vector from_energy_coordinates(const EnergyTransform& t, const Vector& x) {
  return t.inv_sqrt_K * x;
}

double psi_threshold(const EnergyTransform& t) { return diagnose_boundary(t.abstract).theta; }

double dirichlet_functional(const DirichletProblem& p, const Vector& u) {
  return p.h * (dot(u, u) + 2.0 * dot(p.phi, u));
}

double dirichlet_energy(const DirichletProblem& p, const Vector& u) {
  return p.h * dot(u, tridiagonal_apply(p.n, p.h, u));
}

double invert_psi(const DirichletProblem& p, double r, double delta) {
  if (!(r > 0.0) || !(r < delta)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "r=" << r << " must lie in ]0, delta=" << delta << "[";
    throw Error(ErrorCode::OutOfRange, msg.str());
  }
  // Offsets from lambda1 keep resolution when the root approaches the pole.
  const double top = p.lambda1;
  const double min_off = 2e-10 * top;
  auto psi_at = [&](double offset) { return offset >= top ? 0.0 : psi_value(p, top - offset); };

  if (psi_at(min_off) < r) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "r=" << r << " exceeds psi just below lambda1";
    throw Error(ErrorCode::OutOfRange, msg.str());
  }
  // Invariant: psi(top - a) >= r > psi(top - b).
  double a = 0.5 * top;
  double b = top;
  if (psi_at(a) < r) {
    b = a;
    do {
      a = std::max(0.1 * a, min_off);
      if (psi_at(a) >= r) break;
      b = a;
    } while (a > min_off);
  }
  while (b - a > 1e-14 * b) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    if (psi_at(mid) >= r) a = mid; else b = mid;
  }
  double mu = top - 0.5 * (a + b);
  for (int k = 0; k < 20; ++k) {
    const double f = psi_value(p, mu) - r;
    if (f == 0.0) break;
    const double next = mu - f / psi_derivative(p, mu);
    if (!(next > top - b && next < top - a)) break;
    if (next == mu) break;
    mu = next;
  }
  return mu;
}

double invert_psi(const DirichletProblem& p, double r) {
  return invert_psi(p, r, psi_threshold(build_transform(p)));
}

EtaCurveReport eta_curve(const DirichletProblem& p, const std::vector<double>& r_grid) {
  const EnergyTransform t = build_transform(p);
  const Instance& inst = t.abstract;

  EtaCurveReport rep;
  rep.delta = psi_threshold(t);
  for (std::size_t k = 0; k < r_grid.size(); ++k) {
    const double r = r_grid[k];
    if (!(r > 0.0) || !(r < rep.delta) || (k > 0 && !(r > r_grid[k - 1]))) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "radius grid must increase inside ]0, delta=" << rep.delta << "[ (offending r=" << r
          << ")";
      throw Error(ErrorCode::OutOfRange, msg.str());
    }
  }

  rep.audit = audit_curve(sample_radii(inst, r_grid));

  for (double r : r_grid) {
    const SphericalSolution sol = maximize_on_sphere(inst, r);
    const Vector w = from_energy_coordinates(t, sol.x_hat);
    const double mu = invert_psi(p, r, rep.delta);
    const DirichletSolution pde = solve_u_mu(p, mu);

    EtaSample s;
    s.r = r;
    s.eta = sol.gamma;
    s.eta_prime = sol.multiplier;
    s.mu = mu;
    s.c5_residual =
        (tridiagonal_apply(p.n, p.h, w) - (1.0 / s.eta_prime) * (w + p.phi)).norm();
    s.w_gap = distance(w, pde.u);
    s.product_error = std::abs(s.eta_prime * mu - 1.0);
    s.functional_gap = std::abs(dirichlet_functional(p, w) - s.eta);

    rep.max_product_error = std::max(rep.max_product_error, s.product_error);
    rep.max_c5_residual = std::max(rep.max_c5_residual, s.c5_residual);
    rep.max_w_gap = std::max(rep.max_w_gap, s.w_gap);
    rep.samples.push_back(s);
  }
  return rep;
}

}  // namespace secular
