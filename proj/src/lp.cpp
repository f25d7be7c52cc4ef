#include "nomaee/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace nomaee {

namespace {

constexpr double kPivotTol = 1e-11;

class Tableau {
 public:
  Tableau(int rows, int cols) : t_(Eigen::MatrixXd::Zero(rows, cols + 1)), basis_(rows, -1), cols_(cols) {}

  double& at(int i, int j) { return t_(i, j); }
  double& rhs(int i) { return t_(i, cols_); }
  int rows() const { return static_cast<int>(t_.rows()); }
  int cols() const { return cols_; }
  std::vector<int>& basis() { return basis_; }

  void pivot(int r, int c) {
    t_.row(r) /= t_(r, c);
    for (int i = 0; i < rows(); ++i) {
      if (i != r && t_(i, c) != 0.0) t_.row(i) -= t_(i, c) * t_.row(r);
    }
    basis_[r] = c;
  }

  double reduced_cost(const Eigen::VectorXd& cost, int j) const {
    double z = cost(j);
    for (int i = 0; i < rows(); ++i) z -= cost(basis_[i]) * t_(i, j);
    return z;
  }

  double objective(const Eigen::VectorXd& cost) const {
    double z = 0.0;
    for (int i = 0; i < rows(); ++i) z += cost(basis_[i]) * t_(i, cols_);
    return z;
  }

  // Bland's rule; returns Optimal, Unbounded or IterationLimit.
  LpStatus optimize(const Eigen::VectorXd& cost, int allowed_cols, int& budget, int& iterations) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < allowed_cols; ++j) {
        if (reduced_cost(cost, j) < -1e-12) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return LpStatus::Optimal;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows(); ++i) {
        const double a = t_(i, enter);
        if (a > kPivotTol) {
          const double ratio = t_(i, cols_) / a;
          if (ratio < best - 1e-15 || (std::abs(ratio - best) <= 1e-15 && basis_[i] < basis_[leave])) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return LpStatus::Unbounded;
      if (budget-- <= 0) return LpStatus::IterationLimit;
      ++iterations;
      pivot(leave, enter);
    }
  }

 private:
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
  int cols_;
};

}  // namespace

LpResult solve_lp(const Eigen::MatrixXd& A_in, const Eigen::VectorXd& b_in, const Eigen::VectorXd& c_in,
                  int max_iterations) {
  const int m = static_cast<int>(A_in.rows());
  const int n = static_cast<int>(A_in.cols());
  LpResult result;

  // Geometric equilibration: rows by max |a_ij| (and |b_i|), columns by max |a_ij|.
  Eigen::MatrixXd A = A_in;
  Eigen::VectorXd b = b_in;
  Eigen::VectorXd col_scale = Eigen::VectorXd::Ones(n);
  for (int pass = 0; pass < 4; ++pass) {
    for (int i = 0; i < m; ++i) {
      const double s = A.row(i).cwiseAbs().maxCoeff();
      if (s > 0.0) {
        A.row(i) /= s;
        b(i) /= s;
      }
    }
    for (int j = 0; j < n; ++j) {
      const double s = A.col(j).cwiseAbs().maxCoeff();
      if (s > 0.0) {
        A.col(j) /= s;
        col_scale(j) /= s;
      }
    }
  }
  const Eigen::VectorXd c = c_in.cwiseProduct(col_scale);

  int n_art = 0;
  for (int i = 0; i < m; ++i) {
    if (A.row(i).cwiseAbs().maxCoeff() == 0.0 && b(i) < 0.0) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    if (b(i) < 0.0) ++n_art;
  }

  const int cols = n + m + n_art;
  Tableau tab(m, cols);
  int art = n + m;
  for (int i = 0; i < m; ++i) {
    const double sign = b(i) < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) tab.at(i, j) = sign * A(i, j);
    tab.at(i, n + i) = sign;
    tab.rhs(i) = sign * b(i);
    if (sign < 0.0) {
      tab.at(i, art) = 1.0;
      tab.basis()[i] = art++;
    } else {
      tab.basis()[i] = n + i;
    }
  }

  int budget = max_iterations;
  if (n_art > 0) {
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(cols);
    phase1.tail(n_art).setOnes();
    const LpStatus s = tab.optimize(phase1, cols, budget, result.iterations);
    if (s == LpStatus::IterationLimit) {
      result.status = s;
      return result;
    }
    const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
    if (tab.objective(phase1) > 1e-10 * scale) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    // Drive remaining (zero-level) artificials out of the basis.
    for (int i = 0; i < m; ++i) {
      if (tab.basis()[i] < n + m) continue;
      for (int j = 0; j < n + m; ++j) {
        if (std::abs(tab.at(i, j)) > 1e-9) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }

  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(cols);
  phase2.head(n) = c;
  const LpStatus s = tab.optimize(phase2, n + m, budget, result.iterations);
  if (s != LpStatus::Optimal) {
    result.status = s;
    return result;
  }

  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i) {
    if (tab.basis()[i] < n) y(tab.basis()[i]) = std::max(0.0, tab.rhs(i));
  }
  result.x = y.cwiseProduct(col_scale);
  result.objective = c_in.dot(result.x);
  result.status = LpStatus::Optimal;
  return result;
}

}  // namespace nomaee
