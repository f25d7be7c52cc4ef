#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "nomaee/config.hpp"

namespace nomaee {

/// 3GPP macro-cell path loss, PL[dB] = 128.1 + 37.6 log10(d / 1 km),
/// returned as a linear power gain.
template <typename Scalar>
Scalar path_loss_linear(Scalar distance_m) {
  using std::log10;
  using std::pow;
  if (!(distance_m > Scalar(0))) throw std::domain_error("path loss needs a positive distance");
  const Scalar pl_db = Scalar(128.1) + Scalar(37.6) * log10(distance_m / Scalar(1000));
  return pow(Scalar(10), -pl_db / Scalar(10));
}

struct Placement {
  Eigen::Matrix2Xd bs_positions;    // one column per BS
  Eigen::Matrix2Xd user_positions;  // one column per user id
  Eigen::MatrixXd distance;         // users x BSs, meters
  std::vector<int> home_bs;         // serving BS for non-CoMP users, -1 for the cell-edge user
};

struct ChannelDraw {
  Eigen::MatrixXd gain;  // users x BSs, |h|^2 (path loss times fading)
  std::uint64_t seed = 0;
};

/// Normalized channel gains h~ = |h|^2 / (B N0) in 1/W.
struct CnrTable {
  Eigen::MatrixXd cnr;  // users x BSs
  // Per BS: its non-CoMP users by descending serving CNR (ties by user id),
  // followed by the cell-edge user, which is always decoded last.
  std::vector<std::vector<int>> sic_order;
  int edge_user = 0;

  int n_users() const { return static_cast<int>(cnr.rows()); }
  int n_bs() const { return static_cast<int>(cnr.cols()); }
};

enum class Fading { Rayleigh, None };

/// Coordinates of the BS sites: origin for one BS, a segment for two,
/// a regular polygon with side inter_bs_distance otherwise.
Eigen::Matrix2Xd bs_sites(const NetworkConfig& cfg);

/// Throws ConfigError when the coverage discs of all BSs do not intersect.
Placement place_users(const ValidatedConfig& cfg, std::uint64_t seed);

ChannelDraw draw_channel(const Placement& placement, std::uint64_t seed,
                         Fading fading = Fading::Rayleigh);

CnrTable cnr_table(const ChannelDraw& draw, const NetworkConfig& cfg);

/// Placement, fading and normalization for one seed.
CnrTable sample_cnr(const ValidatedConfig& cfg, std::uint64_t seed, Fading fading = Fading::Rayleigh);

/// BS with the strongest CNR towards the cell-edge user (lowest index on ties).
int best_serving_bs(const CnrTable& cnr);

/// Debug dump: user,bs,serving_bs,cnr_per_watt (serving_bs is -1 for the
/// shared cell-edge user).
void write_cnr_csv(std::ostream& out, const CnrTable& cnr, const Placement& placement);

}  // namespace nomaee
