#include "nomaee/rates.hpp"

#include <algorithm>

namespace nomaee {

int ClusterLayout::bs_of(int v) const {
  auto it = std::upper_bound(offset.begin(), offset.end(), v);
  return static_cast<int>(it - offset.begin()) - 1;
}

ClusterLayout cluster_layout(const CnrTable& cnr, const NetworkConfig& cfg, ScenarioKind scenario,
                             int edge_bs) {
  ClusterLayout layout;
  layout.scenario = scenario;
  layout.cluster_size = cfg.users_per_cluster;
  layout.edge_user = cnr.edge_user;
  layout.edge_bs = scenario == ScenarioKind::Jtcn ? -1 : edge_bs;
  if (scenario == ScenarioKind::ConventionalNoma && (edge_bs < 0 || edge_bs >= cnr.n_bs())) {
    throw std::out_of_range("cluster_layout: edge_bs outside network");
  }
  int next = 0;
  for (int b = 0; b < cnr.n_bs(); ++b) {
    std::vector<int> m = cnr.sic_order[b];
    if (scenario == ScenarioKind::ConventionalNoma && b != edge_bs) m.pop_back();
    layout.offset.push_back(next);
    next += static_cast<int>(m.size());
    layout.members.push_back(std::move(m));
  }
  return layout;
}

Eigen::VectorXd PowerAllocation::per_bs() const {
  Eigen::VectorXd out(layout.n_bs());
  for (int b = 0; b < layout.n_bs(); ++b) {
    out(b) = watts.segment(layout.offset[b], static_cast<Eigen::Index>(layout.members[b].size())).sum();
  }
  return out;
}

SinrModel build_sinr_model(const ClusterLayout& layout, const CnrTable& cnr, const NetworkConfig& cfg) {
  const int n = layout.n_vars();
  const int n_bs = layout.n_bs();

  // One row per served user, in user-id order.
  std::vector<int> users;
  for (int u = 0; u < cnr.n_users(); ++u) {
    for (const auto& m : layout.members) {
      if (std::find(m.begin(), m.end(), u) != m.end()) {
        users.push_back(u);
        break;
      }
    }
  }

  SinrModel model;
  const int t = static_cast<int>(users.size());
  model.signal = Eigen::MatrixXd::Zero(t, n);
  model.interference = Eigen::MatrixXd::Zero(t, n);
  model.noise = Eigen::VectorXd::Constant(t, cfg.omega);
  model.gamma_min.resize(t);
  model.rate_scale = cfg.omega * cfg.bandwidth_b;
  model.term_user = users;
  model.p_max = cfg.p_max;
  model.budget = Eigen::MatrixXd::Zero(n_bs, n);
  for (int b = 0; b < n_bs; ++b) {
    model.budget.row(b).segment(layout.offset[b], static_cast<Eigen::Index>(layout.members[b].size())).setOnes();
  }

  for (int k = 0; k < t; ++k) {
    const int u = users[k];
    model.gamma_min(k) = gamma_min(cfg.r_min(u), model.rate_scale);
    for (int b = 0; b < n_bs; ++b) {
      const auto& m = layout.members[b];
      const auto pos = std::find(m.begin(), m.end(), u);
      const double h = cnr.cnr(u, b);
      if (pos == m.end()) {
        // Not served by b: every stream of b is inter-cell interference.
        for (std::size_t j = 0; j < m.size(); ++j) model.interference(k, layout.var(b, static_cast<int>(j))) = h;
      } else {
        // Served by b: own stream is signal, stronger users' streams are
        // not cancelled and remain as intra-cluster interference.
        const int rank = static_cast<int>(pos - m.begin());
        model.signal(k, layout.var(b, rank)) = h;
        for (int j = 0; j < rank; ++j) model.interference(k, layout.var(b, j)) = h;
      }
    }
  }
  return model;
}

SinrModel restrict_to_bs(const SinrModel& full, const ClusterLayout& layout, int bs, const Eigen::VectorXd& fixed) {
  const int first = layout.offset[bs];
  const int size = static_cast<int>(layout.members[bs].size());
  std::vector<int> rows;
  for (int k = 0; k < full.n_terms(); ++k) {
    if (full.signal.row(k).segment(first, size).cwiseAbs().sum() > 0.0) rows.push_back(k);
  }
  Eigen::VectorXd outside = fixed;
  outside.segment(first, size).setZero();

  SinrModel local;
  const auto r = static_cast<Eigen::Index>(rows.size());
  local.signal.resize(r, size);
  local.interference.resize(r, size);
  local.noise.resize(r);
  local.gamma_min.resize(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    const int k = rows[i];
    local.signal.row(i) = full.signal.row(k).segment(first, size);
    local.interference.row(i) = full.interference.row(k).segment(first, size);
    if (full.signal.row(k).dot(outside.cwiseAbs()) != 0.0 || full.signal.row(k).sum() !=
                                                                  full.signal.row(k).segment(first, size).sum()) {
      throw std::invalid_argument("restrict_to_bs: user is served by several BSs");
    }
    local.noise(i) = full.noise(k) + full.interference.row(k).dot(outside);
    local.gamma_min(i) = full.gamma_min(k);
    local.term_user.push_back(full.term_user[k]);
  }
  local.rate_scale = full.rate_scale;
  local.p_max = full.p_max;
  local.budget = Eigen::MatrixXd::Ones(1, size);
  return local;
}

Eigen::VectorXd rates_by_user(const SinrModel& model, const Eigen::VectorXd& p, int n_users) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n_users);
  const Eigen::VectorXd r = model.rates(p);
  for (int k = 0; k < model.n_terms(); ++k) out(model.term_user[k]) = r(k);
  return out;
}

double sinr_noma(int rank, int bs, const PowerAllocation& p, const CnrTable& cnr, double omega) {
  const ClusterLayout& layout = p.layout;
  const int u = layout.members.at(bs).at(rank);
  double inter = 0.0;
  for (int b = 0; b < layout.n_bs(); ++b) {
    if (b == bs) continue;
    for (std::size_t j = 0; j < layout.members[b].size(); ++j) {
      inter += p.at(b, static_cast<int>(j)) * cnr.cnr(u, b);
    }
  }
  double intra = 0.0;
  for (int j = 0; j < rank; ++j) intra += p.at(bs, j) * cnr.cnr(u, bs);
  return p.at(bs, rank) * cnr.cnr(u, bs) / (inter + intra + omega);
}

Eigen::VectorXd rate_noma(const PowerAllocation& p, const CnrTable& cnr, const NetworkConfig& cfg) {
  if (p.layout.scenario != ScenarioKind::ConventionalNoma) {
    throw std::invalid_argument("rate_noma: allocation is not a conventional NOMA layout");
  }
  return rates_by_user(build_sinr_model(p.layout, cnr, cfg), p.watts, cnr.n_users());
}

Eigen::VectorXd rate_jtcn(const PowerAllocation& p, const CnrTable& cnr, const NetworkConfig& cfg) {
  if (p.layout.scenario != ScenarioKind::Jtcn) {
    throw std::invalid_argument("rate_jtcn: allocation is not a JTCN layout");
  }
  return rates_by_user(build_sinr_model(p.layout, cnr, cfg), p.watts, cnr.n_users());
}

}  // namespace nomaee
