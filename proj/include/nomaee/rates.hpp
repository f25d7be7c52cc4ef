#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "nomaee/channel.hpp"
#include "nomaee/config.hpp"

namespace nomaee {

/// Which users each BS superposes, in SIC decoding order, and how the
/// (BS, rank) pairs map onto the flat power vector.
struct ClusterLayout {
  ScenarioKind scenario = ScenarioKind::Jtcn;
  int edge_bs = -1;        // BS serving the cell-edge user in conventional NOMA, -1 for JTCN
  int cluster_size = 0;    // configured J_b
  int edge_user = 0;
  std::vector<std::vector<int>> members;  // per BS, rank 0 = cluster head
  std::vector<int> offset;                // first flat index of each BS

  int n_bs() const { return static_cast<int>(members.size()); }
  int n_vars() const { return offset.empty() ? 0 : offset.back() + static_cast<int>(members.back().size()); }
  int var(int bs, int rank) const { return offset[bs] + rank; }
  int bs_of(int v) const;
  int rank_of(int v) const { return v - offset[bs_of(v)]; }
  int user_of(int v) const { return members[bs_of(v)][rank_of(v)]; }
  bool is_comp(int user) const { return scenario == ScenarioKind::Jtcn && user == edge_user; }
};

/// In conventional NOMA the cell-edge user joins only the cluster of
/// `edge_bs`; in JTCN it is the last member of every cluster.
ClusterLayout cluster_layout(const CnrTable& cnr, const NetworkConfig& cfg, ScenarioKind scenario,
                             int edge_bs = 0);

struct PowerAllocation {
  ClusterLayout layout;
  Eigen::VectorXd watts;  // indexed by ClusterLayout::var

  double at(int bs, int rank) const { return watts(layout.var(bs, rank)); }
  /// Radiated power per BS.
  Eigen::VectorXd per_bs() const;
};

/// Every user rate is omega*B*log2(1 + s/(i + n)) where s and i are
/// linear in the power vector: s = signal.row(k) * p, i = interference.row(k) * p.
/// Row k describes one user (the CoMP user has one row with several
/// signal entries). `noise` is the normalized noise (omega), plus any
/// interference held fixed when the model is restricted to one BS.
template <typename Scalar>
struct SinrModelT {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Matrix signal;
  Matrix interference;
  Vector noise;
  Vector gamma_min;  // 2^(R_min / (omega B)) - 1 per row
  Scalar rate_scale = Scalar(1);  // omega * B
  std::vector<int> term_user;
  Matrix budget;  // BS x vars, ones where the variable belongs to that BS
  Scalar p_max = Scalar(0);

  int n_terms() const { return static_cast<int>(signal.rows()); }
  int n_vars() const { return static_cast<int>(signal.cols()); }

  template <typename Derived>
  Vector sinr(const Eigen::MatrixBase<Derived>& p) const {
    return ((signal * p).array() / ((interference * p).array() + noise.array())).matrix();
  }

  template <typename Derived>
  Vector rates(const Eigen::MatrixBase<Derived>& p) const {
    using std::log2;
    return (rate_scale * sinr(p).array().unaryExpr([](Scalar g) { return log2(Scalar(1) + g); })).matrix();
  }

  Vector min_rates() const {
    return (rate_scale * gamma_min.array().unaryExpr([](Scalar g) { return std::log2(Scalar(1) + g); }))
        .matrix();
  }
};

using SinrModel = SinrModelT<double>;

SinrModel build_sinr_model(const ClusterLayout& layout, const CnrTable& cnr, const NetworkConfig& cfg);

/// Model of a single BS's cluster with every other BS's power held at
/// `fixed`; their interference moves into the noise term.
SinrModel restrict_to_bs(const SinrModel& full, const ClusterLayout& layout, int bs,
                         const Eigen::VectorXd& fixed);

/// Per-user rates (bits/s) indexed by user id; unserved users get 0.
Eigen::VectorXd rates_by_user(const SinrModel& model, const Eigen::VectorXd& p, int n_users);

/// SINR of the user at `rank` in BS `bs` under conventional NOMA.
double sinr_noma(int rank, int bs, const PowerAllocation& p, const CnrTable& cnr, double omega);

Eigen::VectorXd rate_noma(const PowerAllocation& p, const CnrTable& cnr, const NetworkConfig& cfg);
Eigen::VectorXd rate_jtcn(const PowerAllocation& p, const CnrTable& cnr, const NetworkConfig& cfg);

/// Number of SIC decodings performed by the user at 1-based position
/// `index` of a cluster of `cluster_size` users (its own included).
constexpr int decoding_count(int index, int cluster_size) {
  if (index < 1 || index > cluster_size) throw std::out_of_range("decoding_count: index outside cluster");
  return cluster_size - index + 1;
}

inline double gamma_min(double r_min, double rate_scale) { return std::exp2(r_min / rate_scale) - 1.0; }

}  // namespace nomaee
