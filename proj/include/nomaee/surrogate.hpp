#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nomaee/barrier.hpp"
#include "nomaee/pcm.hpp"
#include "nomaee/rates.hpp"

namespace nomaee {

/// Elementwise 2^q.
inline Eigen::VectorXd exp2(const Eigen::VectorXd& q) { return (q.array() * std::numbers::ln2).exp().matrix(); }

// Concave surrogate of the sum rate in the log-power domain q = log2(p).
//
// log2(1 + g) >= a log2(g) + c with a = g0/(1+g0), c = log2(1+g0) - a log2(g0),
// tight at g = g0. A user whose signal arrives from several BSs has
// log2(sum_b h_b 2^q_b) lower-bounded by sum_b w_b (q_b + log2(h_b / w_b)),
// sum_b w_b = 1, tight when w_b is the share of received power from b.

template <typename Scalar>
struct RateBound {
  Scalar a;
  Scalar c;
};

template <typename Scalar>
RateBound<Scalar> bound_coeffs(Scalar gamma0) {
  using std::log2;
  if (!(gamma0 > Scalar(0))) throw std::domain_error("bound_coeffs: SINR must be positive");
  const Scalar a = gamma0 / (Scalar(1) + gamma0);
  return {a, log2(Scalar(1) + gamma0) - a * log2(gamma0)};
}

/// Share of received power contributed by each entry of `received`
/// (received(b) = h_b 2^q_b). Uniform when everything underflows.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> comp_split_coeffs(
    const Eigen::MatrixBase<Derived>& received) {
  using Scalar = typename Derived::Scalar;
  const Scalar total = received.sum();
  if (!(total > Scalar(0)) || !std::isfinite(static_cast<double>(total))) {
    return Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Constant(received.size(), Scalar(1) / received.size());
  }
  return received / total;
}

/// Linearization point of one SCA iteration: (a, c) per user row and the
/// split weights over each row's signal entries (rows x vars, zero off
/// the signal support, rows sum to one).
struct BoundCoeffs {
  Eigen::VectorXd a;
  Eigen::VectorXd c;
  Eigen::MatrixXd split;
};

/// Coefficients that make the surrogate tight at q.
BoundCoeffs linearize(const SinrModel& model, const Eigen::VectorXd& q);

/// Surrogate rates in bits/s, one per model row.
Eigen::VectorXd tilde_rates(const SinrModel& model, const BoundCoeffs& coeffs, const Eigen::VectorXd& q);

/// Exact rate-constraint residuals in q: log2(gamma_min (I + n)) - log2(S),
/// with S and I the signal and interference received at p = 2^q.
/// residual <= 0 iff R(2^q) >= R_min. Rows with gamma_min = 0 get -inf.
Eigen::VectorXd rate_constraints_q(const SinrModel& model, const Eigen::VectorXd& q);

/// Smooth pieces for the barrier solver. Values are in units of
/// rate_scale (bits/s divided by omega B) so that they stay O(1).
SmoothFn surrogate_objective(const SinrModel& model, const BoundCoeffs& coeffs, const AffinePower& power,
                             double lambda);

/// Convex rate constraints (the multi-BS row uses the split restriction)
/// followed by the per-BS budget constraints log2(sum 2^q) <= log2(P_max).
std::vector<SmoothFn> convex_constraints(const SinrModel& model, const BoundCoeffs& coeffs);

}  // namespace nomaee
