#pragma once

#include <Eigen/Dense>

namespace nomaee {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpResult {
  LpStatus status = LpStatus::IterationLimit;
  Eigen::VectorXd x;
  double objective = 0.0;
  int iterations = 0;
};

/// Dense two-phase simplex with Bland's rule for
///   min c.x  s.t.  A x <= b,  x >= 0.
/// Rows and columns are equilibrated internally; the problems here have
/// a handful of variables.
LpResult solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                  int max_iterations = 10000);

}  // namespace nomaee
