#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nomaee/barrier.hpp"
#include "nomaee/lp.hpp"
#include "nomaee/surrogate.hpp"
#include "support.hpp"

using namespace nomaee;

TEST(Lp, TextbookOptimum) {
  Eigen::MatrixXd A(2, 2);
  A << 1, 2, 3, 1;
  const LpResult r = solve_lp(A, Eigen::Vector2d(4, 6), Eigen::Vector2d(-1, -1));
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.x(0), 1.6, 1e-12);
  EXPECT_NEAR(r.x(1), 1.2, 1e-12);
  EXPECT_NEAR(r.objective, -2.8, 1e-12);
}

TEST(Lp, LowerBoundsViaNegativeRhs) {
  Eigen::MatrixXd A(2, 2);
  A << -1, 0, 0, -1;
  const LpResult r = solve_lp(A, Eigen::Vector2d(-2, -3e-9), Eigen::Vector2d(1, 1e9));
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.x(0), 2.0, 1e-12);
  EXPECT_NEAR(r.x(1), 3e-9, 1e-20);
}

TEST(Lp, InfeasibleAndUnbounded) {
  EXPECT_EQ(solve_lp(Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Constant(1, -1), Eigen::VectorXd::Ones(1)).status,
            LpStatus::Infeasible);
  Eigen::MatrixXd A(2, 1);
  A << 1, -1;
  EXPECT_EQ(solve_lp(A, Eigen::Vector2d(1, -2), Eigen::VectorXd::Ones(1)).status, LpStatus::Infeasible);
  EXPECT_EQ(solve_lp(-Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Zero(1), -Eigen::VectorXd::Ones(1)).status,
            LpStatus::Unbounded);
}

TEST(Lp, RandomFeasibleProblemsAgreeWithVertexEnumeration) {
  // 2-D problems: check against brute force over all constraint intersections.
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 4;
    Eigen::MatrixXd A = Eigen::MatrixXd::NullaryExpr(m, 2, [&] { return u(rng); });
    Eigen::VectorXd b = Eigen::VectorXd::NullaryExpr(m, [&] { return 1.0 + u(rng); });
    A.row(0) << 1, 1;  // bounded
    b(0) = 2.0;
    const Eigen::Vector2d c(u(rng), u(rng));
    const LpResult r = solve_lp(A, b, c);
    ASSERT_EQ(r.status, LpStatus::Optimal);
    Eigen::MatrixXd full(m + 2, 2);
    full << A, -Eigen::Matrix2d::Identity();
    Eigen::VectorXd rhs(m + 2);
    rhs << b, 0, 0;
    double best = INFINITY;
    for (int i = 0; i < m + 2; ++i)
      for (int j = i + 1; j < m + 2; ++j) {
        Eigen::Matrix2d M;
        M << full.row(i), full.row(j);
        if (std::abs(M.determinant()) < 1e-12) continue;
        const Eigen::Vector2d x = M.inverse() * Eigen::Vector2d(rhs(i), rhs(j));
        if (((full * x - rhs).array() <= 1e-9).all()) best = std::min(best, c.dot(x));
      }
    EXPECT_NEAR(r.objective, best, 1e-9);
  }
}

namespace {

SmoothFn concave_quadratic(double center) {
  return [center](const Eigen::VectorXd& x, bool d) {
    SmoothEval e;
    e.value = -(x(0) - center) * (x(0) - center);
    if (d) {
      e.grad = Eigen::VectorXd::Constant(1, -2.0 * (x(0) - center));
      e.hess = Eigen::MatrixXd::Constant(1, 1, -2.0);
    }
    return e;
  };
}

SmoothFn linear(const Eigen::VectorXd& a) {
  return [a](const Eigen::VectorXd& x, bool d) {
    SmoothEval e;
    e.value = a.dot(x);
    if (d) {
      e.grad = a;
      e.hess = Eigen::MatrixXd::Zero(a.size(), a.size());
    }
    return e;
  };
}

SmoothFn log_sum_budget(double p_max) {
  return [p_max](const Eigen::VectorXd& q, bool d) {
    const Eigen::VectorXd p = exp2(q);
    const double s = p.sum();
    SmoothEval e;
    e.value = std::log2(s) - std::log2(p_max);
    if (d) {
      const Eigen::VectorXd w = p / s;
      e.grad = w;
      e.hess = std::numbers::ln2 * (Eigen::MatrixXd(w.asDiagonal()) - w * w.transpose());
    }
    return e;
  };
}

}  // namespace

TEST(Barrier, UnconstrainedQuadratic) {
  const BarrierResult r = inner_convex_max({concave_quadratic(3.0), {}}, Eigen::VectorXd::Zero(1));
  EXPECT_NEAR(r.x(0), 3.0, 1e-8);
}

TEST(Barrier, BudgetBoundary) {
  const double p_max = 20.0;
  const ConvexProblem prob{linear(Eigen::Vector3d(1.0, 2.0, 0.5)), {log_sum_budget(p_max)}};
  const BarrierResult r = inner_convex_max(prob, Eigen::VectorXd::Zero(3));
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(exp2(r.x).sum(), p_max, 1e-6 * p_max);
  // KKT: 2^q proportional to the weights
  const Eigen::VectorXd p = exp2(r.x);
  EXPECT_NEAR(p(1) / p(0), 2.0, 1e-5);
  EXPECT_THROW(inner_convex_max(prob, Eigen::VectorXd::Constant(3, 10.0)), BarrierError);
}

TEST(Barrier, PhaseOne) {
  std::vector<SmoothFn> cons{linear(Eigen::Vector2d(1.0, 0.0)), linear(Eigen::Vector2d(-1.0, -1.0))};
  // x0 <= 0 and x0 + x1 >= 0; shift the second so the start is infeasible
  cons[0] = [](const Eigen::VectorXd& x, bool d) {
    SmoothEval e;
    e.value = x(0) + 1.0;
    if (d) {
      e.grad = Eigen::Vector2d(1.0, 0.0);
      e.hess = Eigen::Matrix2d::Zero();
    }
    return e;
  };
  Eigen::VectorXd x = Eigen::Vector2d(0.0, 0.0);
  ASSERT_TRUE(find_strictly_feasible(cons, x));
  EXPECT_LT(max_constraint(cons, x), 0.0);

  std::vector<SmoothFn> impossible{linear(Eigen::Vector2d(1.0, 0.0)), linear(Eigen::Vector2d(-1.0, 0.0))};
  Eigen::VectorXd y = Eigen::Vector2d(1.0, 1.0);
  EXPECT_FALSE(find_strictly_feasible(impossible, y));
}

TEST(Bound, Coefficients) {
  const auto one = bound_coeffs(1.0);
  EXPECT_DOUBLE_EQ(one.a, 0.5);
  EXPECT_DOUBLE_EQ(one.c, 1.0);
  const auto three = bound_coeffs(3.0);
  EXPECT_DOUBLE_EQ(three.a, 0.75);
  EXPECT_NEAR(three.c, 0.81128, 1e-5);
  EXPECT_NEAR(three.c, 2.0 - 0.75 * std::log2(3.0), 1e-15);
  EXPECT_THROW(bound_coeffs(0.0), std::domain_error);
  const auto f = bound_coeffs(3.0f);
  EXPECT_FLOAT_EQ(f.a, 0.75f);
}

TEST(Bound, TightAndBelow) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> e(-4.0, 4.0);
  for (int k = 0; k < 1000; ++k) {
    const double g0 = std::pow(10.0, e(rng));
    const auto b = bound_coeffs(g0);
    EXPECT_NEAR(b.a * std::log2(g0) + b.c, std::log2(1 + g0), 1e-12 * std::log2(1 + g0) + 1e-15);
    const double g = std::pow(10.0, e(rng));
    EXPECT_LE(b.a * std::log2(g) + b.c, std::log2(1 + g) + 1e-12);
  }
}

TEST(Split, Weights) {
  auto w = comp_split_coeffs(Eigen::Vector2d(1.0, 1.0));
  EXPECT_DOUBLE_EQ(w(0), 0.5);
  w = comp_split_coeffs(Eigen::Vector2d(1.0, 1e-300));
  EXPECT_DOUBLE_EQ(w(0), 1.0);
  EXPECT_LT(w(1), 1e-299);
  w = comp_split_coeffs(Eigen::Vector2d(3.0, 1.0));
  EXPECT_DOUBLE_EQ(w(0), 0.75);
  EXPECT_DOUBLE_EQ(w(1), 0.25);
  w = comp_split_coeffs(Eigen::Vector2d(0.0, 0.0));
  EXPECT_DOUBLE_EQ(w(1), 0.5);
}

namespace {

struct Instance {
  NetworkConfig cfg;
  CnrTable cnr;
  SinrModel model;
};

Instance instance(ScenarioKind s, std::uint64_t seed, double r_min = 1.5e6) {
  Instance in{table_one_config(r_min), {}, {}};
  in.cnr = sample_cnr(validate_config(in.cfg), seed);
  in.model = build_sinr_model(cluster_layout(in.cnr, in.cfg, s), in.cnr, in.cfg);
  return in;
}

}  // namespace

TEST(Surrogate, TightAtLinearizationAndBelowElsewhere) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-25.0, 4.3);
  for (auto s : {ScenarioKind::ConventionalNoma, ScenarioKind::Jtcn}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const Instance in = instance(s, seed);
      const int n = in.model.n_vars();
      const Eigen::VectorXd q0 = Eigen::VectorXd::NullaryExpr(n, [&] { return u(rng); });
      const BoundCoeffs c = linearize(in.model, q0);
      const Eigen::VectorXd exact = in.model.rates(exp2(q0));
      const Eigen::VectorXd tilde = tilde_rates(in.model, c, q0);
      for (int k = 0; k < exact.size(); ++k) EXPECT_NEAR(tilde(k) / exact(k), 1.0, 1e-9);
      for (int t = 0; t < 1000; ++t) {
        const Eigen::VectorXd q = Eigen::VectorXd::NullaryExpr(n, [&] { return u(rng); });
        const Eigen::VectorXd r = in.model.rates(exp2(q));
        const Eigen::VectorXd rt = tilde_rates(in.model, c, q);
        for (int k = 0; k < r.size(); ++k) EXPECT_LE(rt(k), r(k) * (1 + 1e-12) + 1e-9);
      }
    }
  }
}

TEST(Surrogate, DegenerateSplitIsSingleBsForm) {
  const Instance in = instance(ScenarioKind::Jtcn, 3);
  const Eigen::VectorXd q = Eigen::VectorXd::LinSpaced(6, -2.0, 3.0);
  BoundCoeffs c = linearize(in.model, q);
  const auto& L = cluster_layout(in.cnr, in.cfg, ScenarioKind::Jtcn);
  const int row = static_cast<int>(std::find(in.model.term_user.begin(), in.model.term_user.end(), L.edge_user) -
                                   in.model.term_user.begin());
  const int v0 = L.var(0, 2), v1 = L.var(1, 2);
  c.split.row(row).setZero();
  c.split(row, v0) = 1.0;
  const Eigen::VectorXd p = exp2(q);
  const double interference = in.model.interference.row(row).dot(p) + in.model.noise(row);
  const double expected = in.model.rate_scale *
                          (c.a(row) * std::log2(in.model.signal(row, v0) * p(v0) / interference) + c.c(row));
  EXPECT_NEAR(tilde_rates(in.model, c, q)(row) / expected, 1.0, 1e-12);
  (void)v1;
}

TEST(Surrogate, ConstraintResiduals) {
  for (auto s : {ScenarioKind::ConventionalNoma, ScenarioKind::Jtcn}) {
    const Instance in = instance(s, 2);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.01, 5.0);
    for (int t = 0; t < 200; ++t) {
      const Eigen::VectorXd p = Eigen::VectorXd::NullaryExpr(in.model.n_vars(), [&] { return u(rng); });
      Eigen::VectorXd q = p.array().log2();
      const Eigen::VectorXd res = rate_constraints_q(in.model, q);
      const Eigen::VectorXd g = in.model.sinr(p);
      for (int k = 0; k < res.size(); ++k) EXPECT_NEAR(res(k), std::log2(in.model.gamma_min(k) / g(k)), 1e-9);
    }
  }
}

TEST(Surrogate, ZeroSurfaceMatchesRateOnRays) {
  const Instance in = instance(ScenarioKind::Jtcn, 2);
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const Eigen::VectorXd d = Eigen::VectorXd::NullaryExpr(in.model.n_vars(), [&] { return u(rng); });
    for (int k = 0; k < in.model.n_terms(); ++k) {
      auto gap = [&](double s) { return in.model.rates(s * d)(k) - in.model.min_rates()(k); };
      double lo = 1e-12, hi = 1e6;
      if (gap(lo) > 0 || gap(hi) < 0) continue;
      for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        (gap(mid) < 0 ? lo : hi) = mid;
      }
      const Eigen::VectorXd q = (hi * d).array().log2();
      EXPECT_NEAR(rate_constraints_q(in.model, q)(k), 0.0, 1e-9);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Surrogate, ConvexConstraintsRestrictExact) {
  const Instance in = instance(ScenarioKind::Jtcn, 5);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10.0, 4.0);
  const Eigen::VectorXd q0 = Eigen::VectorXd::NullaryExpr(6, [&] { return u(rng); });
  const BoundCoeffs c = linearize(in.model, q0);
  const auto cons = convex_constraints(in.model, c);
  ASSERT_EQ(static_cast<int>(cons.size()), in.model.n_terms() + 2);
  for (int t = 0; t < 2000; ++t) {
    const Eigen::VectorXd q = Eigen::VectorXd::NullaryExpr(6, [&] { return u(rng); });
    const Eigen::VectorXd exact = rate_constraints_q(in.model, q);
    for (int k = 0; k < in.model.n_terms(); ++k) EXPECT_GE(cons[k](q, false).value, exact(k) - 1e-12);
  }
}
