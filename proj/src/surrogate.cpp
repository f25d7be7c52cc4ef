#include "nomaee/surrogate.hpp"

#include <limits>
#include <numbers>

namespace nomaee {

namespace {

constexpr double kLn2 = std::numbers::ln2;

// log2(sum_j w_j 2^q_j + noise) with derivatives.
void log_sum_exp2(const Eigen::RowVectorXd& w, double noise, const Eigen::VectorXd& q, bool deriv,
                  double& value, Eigen::VectorXd* grad, Eigen::MatrixXd* hess) {
  const Eigen::VectorXd s = (w.transpose().array() * exp2(q).array()).matrix();
  const double total = s.sum() + noise;
  value = std::log2(total);
  if (!deriv) return;
  *grad += s / total;
  *hess += kLn2 * (Eigen::MatrixXd(s.asDiagonal()) / total - s * s.transpose() / (total * total));
}

// sum_j w_j (q_j + log2(h_j / w_j)) over the split support.
double split_term(const Eigen::RowVectorXd& h, const Eigen::RowVectorXd& split, const Eigen::VectorXd& q) {
  double v = 0.0;
  for (Eigen::Index j = 0; j < q.size(); ++j) {
    if (split(j) > 0.0 && h(j) > 0.0) v += split(j) * (q(j) + std::log2(h(j)) - std::log2(split(j)));
  }
  return v;
}

}  // namespace

BoundCoeffs linearize(const SinrModel& model, const Eigen::VectorXd& q) {
  const Eigen::VectorXd p = exp2(q);
  const Eigen::VectorXd gamma0 = model.sinr(p);
  BoundCoeffs out;
  const int t = model.n_terms();
  out.a.resize(t);
  out.c.resize(t);
  out.split = Eigen::MatrixXd::Zero(t, model.n_vars());
  for (int k = 0; k < t; ++k) {
    const auto bound = bound_coeffs(std::max(gamma0(k), std::numeric_limits<double>::min()));
    out.a(k) = bound.a;
    out.c(k) = bound.c;
    std::vector<Eigen::Index> support;
    for (Eigen::Index j = 0; j < model.n_vars(); ++j) {
      if (model.signal(k, j) > 0.0) support.push_back(j);
    }
    Eigen::VectorXd received(static_cast<Eigen::Index>(support.size()));
    for (std::size_t i = 0; i < support.size(); ++i) {
      received(static_cast<Eigen::Index>(i)) = model.signal(k, support[i]) * p(support[i]);
    }
    const Eigen::VectorXd w = comp_split_coeffs(received);
    for (std::size_t i = 0; i < support.size(); ++i) out.split(k, support[i]) = w(static_cast<Eigen::Index>(i));
  }
  return out;
}

Eigen::VectorXd tilde_rates(const SinrModel& model, const BoundCoeffs& coeffs, const Eigen::VectorXd& q) {
  Eigen::VectorXd out(model.n_terms());
  for (int k = 0; k < model.n_terms(); ++k) {
    double lse = 0.0;
    log_sum_exp2(model.interference.row(k), model.noise(k), q, false, lse, nullptr, nullptr);
    const double useful = split_term(model.signal.row(k), coeffs.split.row(k), q);
    out(k) = model.rate_scale * (coeffs.a(k) * (useful - lse) + coeffs.c(k));
  }
  return out;
}

Eigen::VectorXd rate_constraints_q(const SinrModel& model, const Eigen::VectorXd& q) {
  const Eigen::VectorXd p = exp2(q);
  const Eigen::VectorXd s = model.signal * p;
  const Eigen::VectorXd i = model.interference * p + model.noise;
  Eigen::VectorXd out(model.n_terms());
  for (int k = 0; k < model.n_terms(); ++k) {
    out(k) = model.gamma_min(k) > 0.0 ? std::log2(model.gamma_min(k)) + std::log2(i(k)) - std::log2(s(k))
                                      : -std::numeric_limits<double>::infinity();
  }
  return out;
}

SmoothFn surrogate_objective(const SinrModel& model, const BoundCoeffs& coeffs, const AffinePower& power,
                             double lambda) {
  const double lambda_n = lambda / model.rate_scale;
  return [model, coeffs, power, lambda_n](const Eigen::VectorXd& q, bool deriv) {
    const auto n = q.size();
    SmoothEval e;
    if (deriv) {
      e.grad = Eigen::VectorXd::Zero(n);
      e.hess = Eigen::MatrixXd::Zero(n, n);
    }
    double value = 0.0;
    Eigen::VectorXd g_lse;
    Eigen::MatrixXd h_lse;
    for (int k = 0; k < model.n_terms(); ++k) {
      double lse = 0.0;
      if (deriv) {
        g_lse = Eigen::VectorXd::Zero(n);
        h_lse = Eigen::MatrixXd::Zero(n, n);
      }
      log_sum_exp2(model.interference.row(k), model.noise(k), q, deriv, lse, &g_lse, &h_lse);
      const double a = coeffs.a(k);
      value += a * (split_term(model.signal.row(k), coeffs.split.row(k), q) - lse) + coeffs.c(k);
      if (deriv) {
        e.grad += a * (coeffs.split.row(k).transpose() - g_lse);
        e.hess -= a * h_lse;
      }
    }
    const Eigen::VectorXd p = exp2(q);
    value -= lambda_n * (power.slope.dot(p) + power.offset);
    if (deriv) {
      const Eigen::VectorXd dp = kLn2 * power.slope.cwiseProduct(p);
      e.grad -= lambda_n * dp;
      e.hess.diagonal() -= lambda_n * kLn2 * dp;
    }
    e.value = value;
    return e;
  };
}

std::vector<SmoothFn> convex_constraints(const SinrModel& model, const BoundCoeffs& coeffs) {
  std::vector<SmoothFn> out;
  for (int k = 0; k < model.n_terms(); ++k) {
    if (!(model.gamma_min(k) > 0.0)) continue;
    const Eigen::RowVectorXd interference = model.interference.row(k);
    const Eigen::RowVectorXd signal = model.signal.row(k);
    const Eigen::RowVectorXd split = coeffs.split.row(k);
    const double noise = model.noise(k);
    const double log_gamma = std::log2(model.gamma_min(k));
    out.push_back([=](const Eigen::VectorXd& q, bool deriv) {
      SmoothEval e;
      if (deriv) {
        e.grad = Eigen::VectorXd::Zero(q.size());
        e.hess = Eigen::MatrixXd::Zero(q.size(), q.size());
      }
      double lse = 0.0;
      log_sum_exp2(interference, noise, q, deriv, lse, deriv ? &e.grad : nullptr, deriv ? &e.hess : nullptr);
      e.value = log_gamma + lse - split_term(signal, split, q);
      if (deriv) e.grad -= split.transpose();
      return e;
    });
  }
  const double log_pmax = std::log2(model.p_max);
  for (Eigen::Index b = 0; b < model.budget.rows(); ++b) {
    const Eigen::RowVectorXd row = model.budget.row(b);
    out.push_back([=](const Eigen::VectorXd& q, bool deriv) {
      SmoothEval e;
      if (deriv) {
        e.grad = Eigen::VectorXd::Zero(q.size());
        e.hess = Eigen::MatrixXd::Zero(q.size(), q.size());
      }
      double lse = 0.0;
      log_sum_exp2(row, 0.0, q, deriv, lse, deriv ? &e.grad : nullptr, deriv ? &e.hess : nullptr);
      e.value = lse - log_pmax;
      return e;
    });
  }
  return out;
}

}  // namespace nomaee
