#pragma once

#include <Eigen/Dense>

#include "nomaee/channel.hpp"
#include "nomaee/config.hpp"

namespace nomaee::fixtures {

// CNR table with prescribed normalized gains (users x BSs).
inline CnrTable table_from_cnr(const Eigen::MatrixXd& h, const NetworkConfig& cfg) {
  ChannelDraw d;
  d.gain = h * (cfg.bandwidth_b * cfg.n0);
  CnrTable t = cnr_table(d, cfg);
  t.cnr = h;
  return t;
}

// Unit network: B N0 = 1 so that gains equal CNRs, omega = 1.
inline NetworkConfig unit_config(int n_bs, int cluster) {
  NetworkConfig cfg = table_one_config();
  cfg.n_bs = n_bs;
  cfg.users_per_cluster = cluster;
  cfg.non_comp_distances.assign(cluster - 1, 50.0);
  cfg.bandwidth_b = 1.0;
  cfg.n0 = 1.0;
  cfg.omega = 1.0;
  return cfg;
}

}  // namespace nomaee::fixtures
