#include "secular/curves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "secular/boundary.hpp"
#include "secular/errors.hpp"
#include "secular/oracle.hpp"

namespace secular {

std::vector<double> geometric_grid(double r_min, double r_max, int steps) {
  std::vector<double> grid(static_cast<std::size_t>(steps));
  const double ratio = std::log(r_max / r_min) / static_cast<double>(steps - 1);
  for (int k = 0; k < steps; ++k) grid[k] = r_min * std::exp(ratio * k);
  grid.front() = r_min;
  grid.back() = r_max;
  return grid;
}

std::vector<CurveSample> sample_curve(const Instance& inst, double r_min, double r_max, int steps) {
  if (steps < 3) throw Error(ErrorCode::TooFewSamples, "a curve needs at least 3 steps");
  const double theta = diagnose_boundary(inst).theta;
  if (!(r_min > 0.0) || !(r_max > r_min) || !(r_max < theta)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "radius grid [" << r_min << ", " << r_max << "] must satisfy 0 < r_min < r_max < theta="
        << theta;
    throw Error(ErrorCode::OutOfRange, msg.str());
  }
  return sample_radii(inst, geometric_grid(r_min, r_max, steps));
}

std::vector<CurveSample> sample_radii(const Instance& inst, const std::vector<double>& radii) {
  const double theta = diagnose_boundary(inst).theta;
  std::vector<CurveSample> out;
  out.reserve(radii.size());
  for (double r : radii) {
    const SphericalSolution sol = maximize_on_sphere(inst, r);
    CurveSample s;
    s.r = r;
    s.gamma = sol.gamma;
    s.gamma_prime = sol.multiplier;
    if (r < theta) s.g_inverse = invert_g(inst, r);
    s.euler_residual = sol.euler_residual;
    s.regime = sol.regime;
    const double h = kFiniteDifferenceStep * r;
    s.fd_gamma_prime = (gamma_value(inst, r + h) - gamma_value(inst, r - h)) / (2.0 * h);
    out.push_back(std::move(s));
  }
  return out;
}

AuditReport audit_curve(std::vector<CurveSample> samples) {
  if (samples.size() < 3) throw Error(ErrorCode::TooFewSamples, "audit needs at least 3 samples");
  for (std::size_t k = 1; k < samples.size(); ++k)
    if (!(samples[k].r > samples[k - 1].r))
      throw Error(ErrorCode::OutOfRange, "audit samples must have strictly increasing r");

  AuditReport rep;
  rep.monotone_gamma = true;
  rep.monotone_g = true;
  rep.strictly_concave = true;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const CurveSample& s = samples[k];
    rep.derivative_match = std::max(
        rep.derivative_match, std::abs(s.gamma_prime - s.fd_gamma_prime) / std::abs(s.gamma_prime));
    if (s.g_inverse) {
      rep.inverse_match = std::max(rep.inverse_match, std::abs(s.gamma_prime - *s.g_inverse) /
                                                          (1.0 + std::abs(s.gamma_prime)));
    } else {
      rep.monotone_g = false;
    }
    rep.euler_max_residual = std::max(rep.euler_max_residual, s.euler_residual);
    if (k == 0) continue;
    const CurveSample& prev = samples[k - 1];
    if (!(s.gamma > prev.gamma)) rep.monotone_gamma = false;
    if (s.g_inverse && prev.g_inverse && !(*s.g_inverse < *prev.g_inverse)) rep.monotone_g = false;
  }
  for (std::size_t k = 1; k + 1 < samples.size(); ++k) {
    const CurveSample& a = samples[k - 1];
    const CurveSample& b = samples[k];
    const CurveSample& c = samples[k + 1];
    const double left = (b.gamma - a.gamma) / (b.r - a.r);
    const double right = (c.gamma - b.gamma) / (c.r - b.r);
    const double second = 2.0 * (right - left) / (c.r - a.r);
    rep.second_differences.push_back(second);
    if (!(second < -kConcavityTolerance)) rep.strictly_concave = false;
  }
  rep.samples = std::move(samples);
  return rep;
}

// ------------------------------------------------------- counterexamples

GeneralOperator rotation_shear_operator() {
  return GeneralOperator(Matrix::from_rows({{1.0, 1.0}, {-1.0, 1.0}}));
}

PlaneCounterexampleReport counterexample_r2(const std::vector<double>& radii, std::uint64_t seed) {
  const GeneralOperator op = rotation_shear_operator();
  const Vector z{1.0, 0.0};
  BruteForceOptions opts;
  opts.seed = seed;

  PlaneCounterexampleReport rep;
  for (double r : radii) {
    const BruteForceResult at = brute_force_max(op, z, r, opts);
    const double h = kFiniteDifferenceStep * r;
    const double up = brute_force_max(op, z, r + h, opts).value;
    const double down = brute_force_max(op, z, r - h, opts).value;

    PlaneCounterexampleRow row;
    row.r = r;
    row.x_hat = at.best;
    row.gamma = at.value;
    row.gamma_closed_form = r + 2.0 * std::sqrt(r);
    row.fd_gamma_prime = (up - down) / (2.0 * h);
    row.euler_residual = apply(op, at.best) - row.fd_gamma_prime * at.best - z;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

Instance truncated_l2_instance(std::size_t n, std::size_t z_index) {
  if (n < 4) throw Error(ErrorCode::OutOfRange, "truncation dimension must be >= 4");
  if (z_index < 1 || z_index > 2) throw Error(ErrorCode::OutOfRange, "z_index must be 1 or 2");
  std::vector<double> diag(n, 1.0);
  diag[0] = 0.0;
  return Instance(SymmetricOperator(Matrix::diagonal(diag)), Vector::unit(n, z_index - 1));
}

SequenceCounterexampleReport counterexample_l2(std::size_t n, std::size_t z_index,
                                               std::uint64_t seed) {
  const Instance inst = truncated_l2_instance(n, z_index);
  const Instance doubled = truncated_l2_instance(2 * n, z_index);

  SequenceCounterexampleReport rep;
  rep.n = n;
  rep.z_index = z_index;
  rep.theta = diagnose_boundary(inst).theta;

  // r = 2^{-4 + k/4}: 1/16 ... 16, hitting 1 and 4 exactly.
  std::vector<double> radii;
  for (int k = 0; k <= 32; ++k) radii.push_back(std::exp2(-4.0 + k / 4.0));

  BruteForceOptions opts;
  opts.seed = seed;
  opts.restarts = 4;
  opts.iterations = 2000;

  auto piecewise = [](double r) { return r <= 1.0 ? 2.0 * std::sqrt(r) : r + 1.0; };
  auto plus_form = [](double r) { return r + 2.0 * std::sqrt(r); };
  auto minus_form = [](double r) { return r - 2.0 * std::sqrt(r); };
  rep.fits = {{"2*sqrt(r) for r<=1, r+1 for r>=1", 0.0},
              {"r+2*sqrt(r)", 0.0},
              {"r-2*sqrt(r)", 0.0}};

  std::vector<CurveSample> as_samples;
  for (double r : radii) {
    const SphericalSolution sol = maximize_on_sphere(inst, r);
    SequenceRow row;
    row.r = r;
    row.gamma = sol.gamma;
    row.multiplier = sol.multiplier;
    row.regime = sol.regime;
    row.well_posed = sol.well_posed;
    row.oracle_gamma = brute_force_max(inst.op(), inst.z(), r, opts).value;
    row.gamma_doubled = gamma_value(doubled, r);
    rep.truncation_gap = std::max(rep.truncation_gap, std::abs(row.gamma - row.gamma_doubled));
    rep.oracle_max_gap = std::max(rep.oracle_max_gap, std::abs(row.gamma - row.oracle_gamma));
    rep.fits[0].max_deviation = std::max(rep.fits[0].max_deviation, std::abs(row.gamma - piecewise(r)));
    rep.fits[1].max_deviation = std::max(rep.fits[1].max_deviation, std::abs(row.gamma - plus_form(r)));
    rep.fits[2].max_deviation = std::max(rep.fits[2].max_deviation, std::abs(row.gamma - minus_form(r)));

    CurveSample s;
    s.r = r;
    s.gamma = sol.gamma;
    s.gamma_prime = sol.multiplier;
    as_samples.push_back(s);
    rep.rows.push_back(row);
  }

  // Concavity profile only; derivative fields are not needed here.
  for (CurveSample& s : as_samples) s.fd_gamma_prime = s.gamma_prime;
  const AuditReport audit = audit_curve(std::move(as_samples));
  rep.second_differences = audit.second_differences;
  rep.strictly_concave = audit.strictly_concave;

  BruteForceOptions many = opts;
  many.restarts = 8;
  const BruteForceResult at4 = brute_force_max(inst.op(), inst.z(), 4.0, many);
  rep.distinct_maximizers_at_4 = distinct_maximizers(at4, 1e-8, 1e-3).size();
  return rep;
}

}  // namespace secular
