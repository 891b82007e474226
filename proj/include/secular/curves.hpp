#pragma once

// Radius-grid sampling of gamma(r) = sup_{S_r} J and the audit predicates
// that hold on ]0, theta[ for symmetric T, plus the two classical
// counterexamples showing why symmetry and compactness are needed.

#include <optional>
#include <string>
#include <vector>

#include "secular/instance.hpp"
#include "secular/spherical.hpp"

namespace secular {

/// Relative step of the central differences used for fd_gamma_prime.
inline constexpr double kFiniteDifferenceStep = 1e-4;
/// Divided second differences must be below -kConcavityTolerance.
inline constexpr double kConcavityTolerance = 1e-12;

struct CurveSample {
  double r = 0.0;
  double gamma = 0.0;
  /// multiplier of the spherical maximizer
  double gamma_prime = 0.0;
  /// g^{-1}(r); empty for radii at or past theta
  std::optional<double> g_inverse;
  double euler_residual = 0.0;
  /// (gamma(r (1 + h)) - gamma(r (1 - h))) / (2 h r), h = kFiniteDifferenceStep
  double fd_gamma_prime = 0.0;
  Regime regime = Regime::Interior;
};

/// `steps` radii geometrically spaced from r_min to r_max inclusive.
std::vector<double> geometric_grid(double r_min, double r_max, int steps);

/// Requires 0 < r_min < r_max < theta and steps >= 3; throws OutOfRange
/// (naming theta) otherwise.
std::vector<CurveSample> sample_curve(const Instance& inst, double r_min, double r_max, int steps);

/// Samples at arbitrary positive radii, including past theta.
std::vector<CurveSample> sample_radii(const Instance& inst, const std::vector<double>& radii);

struct AuditReport {
  bool monotone_gamma = false;
  bool strictly_concave = false;
  /// g^{-1} strictly decreasing along increasing r, i.e. g decreasing;
  /// false when any sample lacks g^{-1}.
  bool monotone_g = false;
  /// max |gamma_prime - fd_gamma_prime| / |gamma_prime|
  double derivative_match = 0.0;
  /// max |gamma_prime - g_inverse| / (1 + |gamma_prime|)
  double inverse_match = 0.0;
  double euler_max_residual = 0.0;
  /// Divided second differences, one per interior sample.
  std::vector<double> second_differences;
  std::vector<CurveSample> samples;
};

/// Throws TooFewSamples below 3 samples and OutOfRange if r is not increasing.
AuditReport audit_curve(std::vector<CurveSample> samples);

// ------------------------------------------------------- counterexamples

/// The non-symmetric map T(t, s) = (t + s, s - t) on R^2 with z = (1, 0).
GeneralOperator rotation_shear_operator();

struct PlaneCounterexampleRow {
  double r = 0.0;
  Vector x_hat;
  double gamma = 0.0;
  double gamma_closed_form = 0.0;  // r + 2 sqrt(r)
  double fd_gamma_prime = 0.0;
  /// T(x_hat) - gamma'(r) x_hat - z with gamma' from finite differences of the
  /// brute-force values.
  Vector euler_residual;
};

struct PlaneCounterexampleReport {
  std::vector<PlaneCounterexampleRow> rows;
};

PlaneCounterexampleReport counterexample_r2(const std::vector<double>& radii = {0.25, 1.0, 4.0},
                                            std::uint64_t seed = 0);

/// Truncation of the diagonal operator diag(0, 1, 1, ...) on R^n.
Instance truncated_l2_instance(std::size_t n, std::size_t z_index);

struct SequenceRow {
  double r = 0.0;
  double gamma = 0.0;
  double multiplier = 0.0;
  Regime regime = Regime::Interior;
  bool well_posed = true;
  /// brute-force maximum on the same sphere
  double oracle_gamma = 0.0;
  /// gamma on the doubled truncation
  double gamma_doubled = 0.0;
};

struct ClosedFormFit {
  std::string formula;
  double max_deviation = 0.0;
};

struct SequenceCounterexampleReport {
  std::size_t n = 0;
  std::size_t z_index = 0;
  double theta = 0.0;
  std::vector<SequenceRow> rows;
  /// Divided second differences of gamma along the grid.
  std::vector<double> second_differences;
  bool strictly_concave = false;
  /// Candidate closed forms, each with its max deviation over the grid.
  std::vector<ClosedFormFit> fits;
  /// max |gamma_n - gamma_2n| over the grid
  double truncation_gap = 0.0;
  /// Maximizers found by restarts of the brute-force search at r = 4.
  std::size_t distinct_maximizers_at_4 = 0;
  double oracle_max_gap = 0.0;
};

/// Grid straddles r = 1 and r = 4. z_index is 1-based and must be 1 or 2.
SequenceCounterexampleReport counterexample_l2(std::size_t n, std::size_t z_index,
                                               std::uint64_t seed = 0);

}  // namespace secular
