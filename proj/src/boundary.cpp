#include "secular/boundary.hpp"

#include <cmath>
#include <limits>

#include "secular/errors.hpp"
#include "secular/generators.hpp"

namespace secular {

std::vector<std::size_t> eigen_cluster(const Instance& inst, double value) {
  const double tol = kEigenCoincidence * (1.0 + inst.op_norm());
  std::vector<std::size_t> out;
  const auto& values = inst.spectrum().values;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (std::abs(values[i] - value) <= tol) out.push_back(i);
  return out;
}

double component_norm(const Instance& inst, const std::vector<std::size_t>& indices) {
  double s = 0.0;
  for (std::size_t i : indices) s += inst.z_spectral()[i] * inst.z_spectral()[i];
  return std::sqrt(s);
}

BoundaryDiagnosis diagnose_boundary(const Instance& inst) {
  const double norm = inst.op_norm();
  const std::vector<std::size_t> top = eigen_cluster(inst, norm);

  BoundaryDiagnosis diag;
  diag.norm_is_eigenvalue = !top.empty();
  diag.kernel_dim = top.size();

  if (!top.empty() && component_norm(inst, top) > kZeroComponent * inst.z().norm()) {
    diag.v_kind = SolutionSetKind::Empty;
    diag.theta = std::numeric_limits<double>::infinity();
    return diag;
  }

  std::vector<bool> in_top(inst.dim(), false);
  for (std::size_t i : top) in_top[i] = true;

  const auto& values = inst.spectrum().values;
  const Vector& zt = inst.z_spectral();
  Vector coeff(inst.dim());
  double theta = 0.0;
  for (std::size_t i = 0; i < inst.dim(); ++i) {
    if (in_top[i]) continue;
    coeff[i] = zt[i] / (values[i] - norm);
    theta += coeff[i] * coeff[i];
  }
  diag.v_kind = top.empty() ? SolutionSetKind::Singleton : SolutionSetKind::Affine;
  diag.theta = theta;
  diag.min_norm_solution = inst.spectrum().from_spectral(coeff);
  return diag;
}

MaxClassification classify_global_max(const Instance& inst, double tol) {
  MaxClassification out;
  out.t_nonpositive = inst.top_eigenvalue() <= tol;

  const std::vector<std::size_t> kernel = eigen_cluster(inst, 0.0);
  if (component_norm(inst, kernel) <= kZeroComponent * inst.z().norm()) {
    std::vector<bool> in_kernel(inst.dim(), false);
    for (std::size_t i : kernel) in_kernel[i] = true;
    Vector coeff(inst.dim());
    for (std::size_t i = 0; i < inst.dim(); ++i)
      if (!in_kernel[i]) coeff[i] = inst.z_spectral()[i] / inst.spectrum().values[i];
    out.witness = inst.spectrum().from_spectral(coeff);
  }
  out.has_global_max = out.witness.has_value() && out.t_nonpositive;
  return out;
}

Instance positive_instance_generator(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::OutOfRange, "positive instances need n >= 2");
  Rng rng(seed);
  std::uniform_real_distribution<double> top_dist(1.0, 3.0);
  std::uniform_real_distribution<double> frac(0.01, 0.9);
  std::uniform_real_distribution<double> comp(0.1, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<double> eigenvalues(n);
  eigenvalues[0] = top_dist(rng);
  for (std::size_t i = 1; i < n; ++i) eigenvalues[i] = eigenvalues[0] * frac(rng);

  std::vector<double> zt(n);
  zt[0] = (normal(rng) < 0.0 ? -1.0 : 1.0) * comp(rng);
  for (std::size_t i = 1; i < n; ++i) zt[i] = normal(rng);

  const Matrix q = random_orthogonal(n, rng);
  return Instance(operator_from_spectrum(q, eigenvalues), q * Vector(std::move(zt)));
}

}  // namespace secular
