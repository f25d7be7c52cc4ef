#include <algorithm>
#include <cmath>

#include "nomaee/solver.hpp"

namespace nomaee {

DinkelbachResult dinkelbach(const SinrModel& model, const BoundCoeffs& coeffs, const AffinePower& power,
                            const Eigen::VectorXd& q0, const SolverSettings& settings, double lambda0,
                            std::vector<TraceRow>* trace) {
  const std::vector<SmoothFn> constraints = convex_constraints(model, coeffs);
  BarrierSettings bs;
  bs.t0 = settings.barrier_t0;
  bs.growth = settings.barrier_growth;
  bs.tolerance = settings.epsilon_inner;

  const auto ratio_at = [&](const Eigen::VectorXd& q) {
    return tilde_rates(model, coeffs, q).sum() / power(exp2(q));
  };

  DinkelbachResult res;
  res.q = q0;
  res.lambda = ratio_at(q0);
  double lambda = lambda0;
  // Keep the subproblem objective O(1) when every SINR is tiny.
  const double unit = std::clamp(tilde_rates(model, coeffs, q0).sum() / model.rate_scale, 1e-200, 1.0);
  for (int l = 0; l < settings.l_max; ++l) {
    SmoothFn objective = [f = surrogate_objective(model, coeffs, power, lambda), unit](const Eigen::VectorXd& q,
                                                                                       bool d) {
      SmoothEval e = f(q, d);
      e.value /= unit;
      if (d) {
        e.grad /= unit;
        e.hess /= unit;
      }
      return e;
    };
    ConvexProblem problem{std::move(objective), constraints};
    BarrierResult inner;
    try {
      inner = inner_convex_max(problem, res.q, bs);
    } catch (const BarrierError& e) {
      throw SolverError(std::string("Dinkelbach iteration ") + std::to_string(l) + ": " + e.what());
    }
    res.inner_iterations += inner.newton_iterations;
    res.q = inner.x;

    const Eigen::VectorXd p = exp2(res.q);
    const double r_tilde = tilde_rates(model, coeffs, res.q).sum();
    const double consumed = power(p);
    const double f = r_tilde - lambda * consumed;
    res.lambda_trace.push_back(lambda);
    res.f_trace.push_back(f);
    ++res.iterations;
    if (trace) {
      TraceRow row;
      row.dinkelbach_iteration = l;
      row.lambda = lambda;
      row.f_lambda = f;
      row.ee_true = model.rates(p).sum() / consumed;
      const Eigen::VectorXd budget = (model.budget * p / model.p_max).array().log2().matrix();
      row.max_residual = std::max(rate_constraints_q(model, res.q).maxCoeff(), budget.maxCoeff());
      trace->push_back(row);
    }

    const double next = r_tilde / consumed;
    res.lambda = next;
    // F(lambda) / P(q) = next - lambda: stop once it is small relative to lambda.
    if (f <= settings.epsilon_dinkelbach * std::max(next, 0.0) * consumed) {
      res.converged = true;
      break;
    }
    lambda = std::max(lambda, next);
  }
  return res;
}

}  // namespace nomaee
