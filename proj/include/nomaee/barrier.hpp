#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <vector>

namespace nomaee {

struct SmoothEval {
  double value = 0.0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

/// Twice-differentiable function. When `derivatives` is false only
/// `value` needs to be filled in.
using SmoothFn = std::function<SmoothEval(const Eigen::VectorXd& x, bool derivatives)>;

/// maximize objective(x) s.t. constraints[k](x) <= 0, with a concave
/// objective and convex constraints.
struct ConvexProblem {
  SmoothFn objective;
  std::vector<SmoothFn> constraints;
};

struct BarrierSettings {
  double t0 = 1.0;
  double growth = 10.0;
  double tolerance = 1e-9;  // duality-gap bound m/t, relative to max(1, |objective|)
  int max_newton_per_center = 100;
  int max_outer = 60;
};

struct BarrierResult {
  Eigen::VectorXd x;
  double objective = 0.0;
  double gap = 0.0;  // m/t at exit
  int newton_iterations = 0;
  bool converged = false;
};

class BarrierError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Log-barrier interior-point method with damped Newton centering steps.
/// `x0` must be strictly feasible; the returned point never has a lower
/// objective than `x0`.
BarrierResult inner_convex_max(const ConvexProblem& problem, const Eigen::VectorXd& x0,
                               const BarrierSettings& settings = {});

/// Searches for a strictly feasible point of `constraints` starting from
/// x0 (phase I). Returns false when none is found.
bool find_strictly_feasible(const std::vector<SmoothFn>& constraints, Eigen::VectorXd& x,
                            const BarrierSettings& settings = {});

/// Largest constraint value at x.
double max_constraint(const std::vector<SmoothFn>& constraints, const Eigen::VectorXd& x);

}  // namespace nomaee
