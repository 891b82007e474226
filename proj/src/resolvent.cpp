#include "secular/resolvent.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "secular/errors.hpp"

namespace secular {

void require_resolvent_lambda(const Instance& inst, double lambda) {
  const double norm = inst.op_norm();
  if (!(lambda > norm + 1e-12 * (1.0 + norm))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "lambda=" << lambda << " must exceed ||T||=" << norm;
    throw Error(ErrorCode::LambdaTooSmall, msg.str());
  }
}

ResolventSolution spectral_resolvent(const Instance& inst, double lambda) {
  require_resolvent_lambda(inst, lambda);
  const auto& values = inst.spectrum().values;
  const Vector& zt = inst.z_spectral();
  Vector coeff(inst.dim());
  for (std::size_t i = 0; i < inst.dim(); ++i) coeff[i] = zt[i] / (values[i] - lambda);

  ResolventSolution sol;
  sol.lambda = lambda;
  sol.v_hat = inst.spectrum().from_spectral(coeff);
  sol.residual = (apply(inst.op(), sol.v_hat) - lambda * sol.v_hat - inst.z()).norm();
  sol.iterations = 0;
  return sol;
}

int contraction_iteration_cap(double q, double tol) {
  if (q <= 0.0) return 64;
  const double n = std::ceil(std::log(tol * (1.0 - q)) / std::log(q));
  if (!std::isfinite(n) || n < 0.0) return 64;
  if (n > 1e8) return 100'000'064;
  return static_cast<int>(n) + 64;
}

ContractionTrace contraction_resolvent_trace(const Instance& inst, double lambda, double tol) {
  require_resolvent_lambda(inst, lambda);
  if (!(tol > 0.0)) throw Error(ErrorCode::OutOfRange, "contraction tolerance must be positive");

  ContractionTrace trace;
  trace.contraction_factor = inst.op_norm() / lambda;
  const int cap = contraction_iteration_cap(trace.contraction_factor, tol);

  // The map x -> (T(x) - z)/lambda is iterated in correction form: with
  // d_k = x_k - x_{k-1} one has d_{k+1} = T(d_k)/lambda, d_1 = -z/lambda.
  // This is the same sequence of iterates, but the step norms are computed
  // without cancellation, so their ratios stay below ||T||/lambda up to
  // rounding in T(d) alone.
  Vector x(inst.dim());
  Vector step = (-1.0 / lambda) * inst.z();
  int updates = 0;
  for (int k = 0;; ++k) {
    const double step_norm = step.norm();
    x += step;
    trace.step_norms.push_back(step_norm);
    if (step_norm <= tol) break;
    ++updates;
    if (k + 1 >= cap) {
      throw Error(ErrorCode::IterationCapExceeded,
                  "contraction iteration hit its cap of " + std::to_string(cap) + " steps");
    }
    step = (1.0 / lambda) * apply(inst.op(), step);
  }

  ResolventSolution& sol = trace.solution;
  sol.lambda = lambda;
  sol.v_hat = x;
  sol.residual = (apply(inst.op(), x) - lambda * x - inst.z()).norm();
  sol.iterations = updates;
  return trace;
}

ResolventSolution contraction_resolvent(const Instance& inst, double lambda, double tol) {
  return contraction_resolvent_trace(inst, lambda, tol).solution;
}

double g_value(const Instance& inst, double lambda) {
  require_resolvent_lambda(inst, lambda);
  const auto& values = inst.spectrum().values;
  const Vector& zt = inst.z_spectral();
  double sum = 0.0;
  for (std::size_t i = 0; i < inst.dim(); ++i) {
    const double d = values[i] - lambda;
    sum += (zt[i] * zt[i]) / (d * d);
  }
  return sum;
}

}  // namespace secular
