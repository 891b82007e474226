#include "secular/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "secular/boundary.hpp"
#include "secular/errors.hpp"
#include "secular/generators.hpp"

namespace secular {

namespace {

double secular_sum(const Instance& inst, double mu) {
  const auto& values = inst.spectrum().values;
  const Vector& zt = inst.z_spectral();
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - mu;
    sum += (zt[i] * zt[i]) / (d * d);
  }
  return sum;
}

double secular_slope(const Instance& inst, double mu) {
  const auto& values = inst.spectrum().values;
  const Vector& zt = inst.z_spectral();
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = mu - values[i];
    sum += (zt[i] * zt[i]) / (d * d * d);
  }
  return -2.0 * sum;
}

[[noreturn]] void throw_out_of_range(double r, double theta) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "r=" << r << " is not below theta=" << theta;
  throw Error(ErrorCode::OutOfRange, msg.str());
}

// Root of secular_sum(mu) = r on ]floor, inf[, where secular_sum decreases
// strictly from a value above r (the caller guarantees this) to 0.
double solve_secular(const Instance& inst, double r, double floor) {
  const double scale = 1.0 + inst.op_norm();

  double offset_hi = std::max(scale, inst.z().norm() / std::sqrt(r));
  while (secular_sum(inst, floor + offset_hi) > r) offset_hi *= 2.0;

  double offset_lo = offset_hi;
  const double min_offset = 4.0 * std::numeric_limits<double>::epsilon() * scale;
  while (secular_sum(inst, floor + offset_lo) <= r) {
    offset_lo *= 0.1;
    if (offset_lo < min_offset) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "r=" << r << " is numerically indistinguishable from the threshold at mu=" << floor;
      throw Error(ErrorCode::OutOfRange, msg.str());
    }
  }

  // Work in offsets from the floor so resolution is not lost when the root
  // crowds the pole.
  double lo = offset_lo;  // g > r
  double hi = offset_hi;  // g <= r
  while (hi - lo > 1e-13 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (secular_sum(inst, floor + mid) > r) lo = mid; else hi = mid;
  }

  double off = 0.5 * (lo + hi);
  for (int k = 0; k < 30; ++k) {
    const double f = secular_sum(inst, floor + off) - r;
    if (f == 0.0) break;
    if (f > 0.0) lo = std::max(lo, off); else hi = std::min(hi, off);
    const double slope = secular_slope(inst, floor + off);
    double next = off - f / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == off) break;
    off = next;
  }
  // Keep the best of the last Newton iterate and the bracket ends.
  double best = off;
  double best_err = std::abs(secular_sum(inst, floor + off) - r);
  for (double cand : {lo, hi}) {
    const double err = std::abs(secular_sum(inst, floor + cand) - r);
    if (err < best_err) {
      best_err = err;
      best = cand;
    }
  }
  return floor + best;
}

double top_gap_threshold(const Instance& inst, const std::vector<std::size_t>& top_cluster) {
  std::vector<bool> in_top(inst.dim(), false);
  for (std::size_t i : top_cluster) in_top[i] = true;
  const auto& values = inst.spectrum().values;
  const double top = inst.top_eigenvalue();
  double sum = 0.0;
  for (std::size_t i = 0; i < inst.dim(); ++i) {
    if (in_top[i]) continue;
    const double c = inst.z_spectral()[i] / (values[i] - top);
    sum += c * c;
  }
  return sum;
}

SphericalSolution finish(const Instance& inst, double r, double mu, const Vector& coeff,
                         Regime regime, bool well_posed) {
  SphericalSolution sol;
  sol.r = r;
  sol.x_hat = inst.spectrum().from_spectral(coeff);
  sol.multiplier = mu;
  sol.gamma = eval_J(inst.op(), inst.z(), sol.x_hat);
  sol.regime = regime;
  sol.euler_residual = (apply(inst.op(), sol.x_hat) - mu * sol.x_hat - inst.z()).norm();
  sol.well_posed = well_posed;
  return sol;
}

Vector resolvent_coefficients(const Instance& inst, double mu) {
  Vector coeff(inst.dim());
  for (std::size_t i = 0; i < inst.dim(); ++i)
    coeff[i] = inst.z_spectral()[i] / (inst.spectrum().values[i] - mu);
  return coeff;
}

}  // namespace

double eval_J(const GeneralOperator& op, const Vector& z, const Vector& x) {
  return dot(apply(op, x), x) - 2.0 * dot(z, x);
}

double eval_J(const SymmetricOperator& op, const Vector& z, const Vector& x) {
  return dot(apply(op, x), x) - 2.0 * dot(z, x);
}

double secular_value(const Instance& inst, double mu) {
  const auto& values = inst.spectrum().values;
  const double tol = 1e-12 * (1.0 + inst.op_norm());
  for (double v : values) {
    if (std::abs(mu - v) <= tol) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "mu=" << mu << " coincides with eigenvalue " << v;
      throw Error(ErrorCode::MuAtEigenvalue, msg.str());
    }
  }
  if (mu < inst.top_eigenvalue()) {
    throw Error(ErrorCode::OutOfRange, "secular function is only used above the top eigenvalue");
  }
  return secular_sum(inst, mu);
}

double secular_derivative(const Instance& inst, double mu) {
  secular_value(inst, mu);
  return secular_slope(inst, mu);
}

double invert_g(const Instance& inst, double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::NonPositiveRadius, "r must be positive");
  const BoundaryDiagnosis diag = diagnose_boundary(inst);
  if (!(r < diag.theta)) throw_out_of_range(r, diag.theta);
  return solve_secular(inst, r, inst.op_norm());
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::Interior: return "Interior";
    case Regime::BeyondThreshold: return "BeyondThreshold";
    case Regime::HardCase: return "HardCase";
  }
  return "Unknown";
}

SphericalSolution maximize_on_sphere(const Instance& inst, double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::NonPositiveRadius, "r must be positive");
  const BoundaryDiagnosis diag = diagnose_boundary(inst);

  if (r < diag.theta) {
    const double mu = solve_secular(inst, r, inst.op_norm());
    return finish(inst, r, mu, resolvent_coefficients(inst, mu), Regime::Interior, true);
  }

  const double top = inst.top_eigenvalue();
  const std::vector<std::size_t> top_cluster = eigen_cluster(inst, top);
  const bool top_loaded = component_norm(inst, top_cluster) > kZeroComponent * inst.z().norm();
  const double top_threshold =
      top_loaded ? std::numeric_limits<double>::infinity() : top_gap_threshold(inst, top_cluster);

  if (r < top_threshold) {
    const double mu = solve_secular(inst, r, top);
    return finish(inst, r, mu, resolvent_coefficients(inst, mu), Regime::BeyondThreshold, true);
  }

  std::vector<bool> in_top(inst.dim(), false);
  for (std::size_t i : top_cluster) in_top[i] = true;
  Vector coeff(inst.dim());
  for (std::size_t i = 0; i < inst.dim(); ++i) {
    if (!in_top[i]) coeff[i] = inst.z_spectral()[i] / (inst.spectrum().values[i] - top);
  }
  const double excess = std::max(0.0, r - top_threshold);
  coeff[top_cluster.front()] = std::sqrt(excess);
  // Unique only when no eigenspace component is needed; otherwise its sign
  // (and direction, for a multiple top eigenvalue) is free.
  const bool unique = excess <= 1e-12 * r;
  return finish(inst, r, top, coeff, Regime::HardCase, unique);
}

double gamma_value(const Instance& inst, double r) { return maximize_on_sphere(inst, r).gamma; }

double gamma_prime(const Instance& inst, double r) { return invert_g(inst, r); }

GrowthTerms growth_terms(const Instance& inst, const SphericalSolution& sol, const Vector& x) {
  GrowthTerms out;
  out.gap = sol.gamma - eval_J(inst.op(), inst.z(), x);
  const Vector d = x - sol.x_hat;
  out.quadratic_form = sol.multiplier * d.squared_norm() - dot(apply(inst.op(), d), d);
  out.lower_bound = (sol.multiplier - inst.top_eigenvalue()) * d.squared_norm();
  return out;
}

WellposednessReport wellposedness_check(const Instance& inst, double r, int samples,
                                        std::uint64_t seed) {
  const SphericalSolution sol = maximize_on_sphere(inst, r);
  if (sol.regime != Regime::Interior) {
    throw_out_of_range(r, diagnose_boundary(inst).theta);
  }
  WellposednessReport rep;
  rep.r = r;
  rep.multiplier = sol.multiplier;
  rep.gamma = sol.gamma;
  rep.samples = samples;
  rep.tolerance = 1e-9 * (1.0 + std::abs(sol.gamma));
  rep.max_bound_violation = -std::numeric_limits<double>::infinity();

  Rng rng(seed);
  for (int k = 0; k < samples; ++k) {
    const Vector x = random_on_sphere(inst.dim(), r, rng);
    const GrowthTerms t = growth_terms(inst, sol, x);
    const double identity = std::abs(t.gap - t.quadratic_form);
    const double bound = t.lower_bound - t.gap;
    rep.max_identity_violation = std::max(rep.max_identity_violation, identity);
    rep.max_bound_violation = std::max(rep.max_bound_violation, bound);
    if (identity > rep.tolerance || bound > rep.tolerance) ++rep.violations;
  }
  if (samples == 0) rep.max_bound_violation = 0.0;
  return rep;
}

}  // namespace secular
