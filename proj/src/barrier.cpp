#include "nomaee/barrier.hpp"

#include <cmath>
#include <limits>

namespace nomaee {

double max_constraint(const std::vector<SmoothFn>& constraints, const Eigen::VectorXd& x) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& g : constraints) {
    const double v = g(x, false).value;
    if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, v);
  }
  return worst;
}

namespace {

constexpr double kMaxStep = 8.0;

// phi(x) = -t f(x) - sum log(-g_k(x)); +inf outside the strict interior.
double barrier_value(const ConvexProblem& p, const Eigen::VectorXd& x, double t) {
  double phi = 0.0;
  for (const auto& g : p.constraints) {
    const double v = g(x, false).value;
    if (!(v < 0.0) || !std::isfinite(v)) return std::numeric_limits<double>::infinity();
    phi -= std::log(-v);
  }
  const double f = p.objective(x, false).value;
  if (!std::isfinite(f)) return std::numeric_limits<double>::infinity();
  return phi - t * f;
}

Eigen::VectorXd solve_psd(const Eigen::MatrixXd& H, const Eigen::VectorXd& rhs) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
  if (ldlt.info() == Eigen::Success && ldlt.isPositive() && (ldlt.vectorD().array() > 0.0).all()) {
    Eigen::VectorXd d = ldlt.solve(rhs);
    if (d.allFinite()) return d;
  }
  const double scale = std::max(1e-300, H.diagonal().cwiseAbs().maxCoeff());
  for (double shift = 1e-12; shift < 1e6; shift *= 100.0) {
    Eigen::MatrixXd Hs = H;
    Hs.diagonal().array() += shift * scale;
    Eigen::LLT<Eigen::MatrixXd> llt(Hs);
    if (llt.info() == Eigen::Success) {
      Eigen::VectorXd d = llt.solve(rhs);
      if (d.allFinite()) return d;
    }
  }
  return -rhs.cwiseSign() * 1e-3;
}

// Minimizes phi(., t) from x (strictly feasible). Returns Newton steps taken.
int center(const ConvexProblem& p, Eigen::VectorXd& x, double t, int max_steps,
           const std::function<bool(const Eigen::VectorXd&)>& stop) {
  int steps = 0;
  for (; steps < max_steps; ++steps) {
    SmoothEval f = p.objective(x, true);
    Eigen::VectorXd grad = -t * f.grad;
    Eigen::MatrixXd hess = -t * f.hess;
    for (const auto& gfn : p.constraints) {
      SmoothEval g = gfn(x, true);
      const double s = -g.value;
      grad += g.grad / s;
      hess += g.hess / s + (g.grad * g.grad.transpose()) / (s * s);
    }
    Eigen::VectorXd d = solve_psd(hess, -grad);
    const double decrement = -grad.dot(d);
    if (decrement / 2.0 <= 1e-11) break;
    const double longest = d.cwiseAbs().maxCoeff();
    if (longest > kMaxStep) d *= kMaxStep / longest;

    const double phi0 = barrier_value(p, x, t);
    const double slope = grad.dot(d);
    double alpha = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      Eigen::VectorXd trial = x + alpha * d;
      const double phi = barrier_value(p, trial, t);
      if (std::isfinite(phi) && phi <= phi0 + 0.25 * alpha * slope) {
        x = std::move(trial);
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) break;
    if (stop && stop(x)) {
      ++steps;
      break;
    }
  }
  return steps;
}

}  // namespace

BarrierResult inner_convex_max(const ConvexProblem& problem, const Eigen::VectorXd& x0,
                               const BarrierSettings& settings) {
  if (!(max_constraint(problem.constraints, x0) < 0.0)) {
    throw BarrierError("barrier start is not strictly feasible; perturb the start point inward");
  }
  BarrierResult res;
  res.x = x0;
  const double f0 = problem.objective(x0, false).value;
  const double m = static_cast<double>(problem.constraints.size());

  if (m == 0.0) {
    // Unconstrained: plain damped Newton on -f.
    res.newton_iterations = center(problem, res.x, 1.0, settings.max_newton_per_center * 4, {});
    res.converged = true;
  } else {
    double t = settings.t0;
    for (int outer = 0; outer < settings.max_outer; ++outer) {
      res.newton_iterations += center(problem, res.x, t, settings.max_newton_per_center, {});
      const double f = problem.objective(res.x, false).value;
      res.gap = m / t;
      if (res.gap <= settings.tolerance * std::max(1.0, std::abs(f))) {
        res.converged = true;
        break;
      }
      t *= settings.growth;
    }
  }
  res.objective = problem.objective(res.x, false).value;
  if (!(res.objective >= f0)) {
    res.x = x0;
    res.objective = f0;
  }
  return res;
}

bool find_strictly_feasible(const std::vector<SmoothFn>& constraints, Eigen::VectorXd& x,
                            const BarrierSettings& settings) {
  if (max_constraint(constraints, x) < 0.0) return true;
  const auto n = x.size();
  const double s0 = max_constraint(constraints, x);
  if (!std::isfinite(s0)) return false;

  // Variables (x, s): maximize -s subject to g_k(x) - s <= 0 and s >= -1.
  ConvexProblem phase1;
  phase1.objective = [n](const Eigen::VectorXd& z, bool deriv) {
    SmoothEval e;
    e.value = -z(n);
    if (deriv) {
      e.grad = Eigen::VectorXd::Zero(n + 1);
      e.grad(n) = -1.0;
      e.hess = Eigen::MatrixXd::Zero(n + 1, n + 1);
    }
    return e;
  };
  for (const auto& g : constraints) {
    phase1.constraints.push_back([g, n](const Eigen::VectorXd& z, bool deriv) {
      SmoothEval inner = g(z.head(n), deriv);
      SmoothEval e;
      e.value = inner.value - z(n);
      if (deriv) {
        e.grad = Eigen::VectorXd::Zero(n + 1);
        e.grad.head(n) = inner.grad;
        e.grad(n) = -1.0;
        e.hess = Eigen::MatrixXd::Zero(n + 1, n + 1);
        e.hess.topLeftCorner(n, n) = inner.hess;
      }
      return e;
    });
  }
  phase1.constraints.push_back([n](const Eigen::VectorXd& z, bool deriv) {
    SmoothEval e;
    e.value = -1.0 - z(n);
    if (deriv) {
      e.grad = Eigen::VectorXd::Zero(n + 1);
      e.grad(n) = -1.0;
      e.hess = Eigen::MatrixXd::Zero(n + 1, n + 1);
    }
    return e;
  });

  Eigen::VectorXd z(n + 1);
  z.head(n) = x;
  z(n) = s0 + 1.0;
  const auto feasible = [&](const Eigen::VectorXd& zz) { return max_constraint(constraints, zz.head(n)) < 0.0; };
  double t = settings.t0;
  for (int outer = 0; outer < settings.max_outer; ++outer) {
    center(phase1, z, t, settings.max_newton_per_center, feasible);
    if (feasible(z)) {
      x = z.head(n);
      return true;
    }
    if ((phase1.constraints.size()) / t < 1e-12) break;
    t *= settings.growth;
  }
  return false;
}

}  // namespace nomaee
