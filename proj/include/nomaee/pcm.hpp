#pragma once

#include <Eigen/Dense>
#include <optional>

#include "nomaee/config.hpp"
#include "nomaee/rates.hpp"

namespace nomaee {

struct PowerBreakdown {
  double transmit = 0.0;
  double circuit = 0.0;
  double signal_processing = 0.0;
  double sic = 0.0;
  double total = 0.0;
};

/// P(p) = slope . p + offset. PCM-1, PCM-2 and PCM-kappa all have this form.
struct AffinePower {
  Eigen::VectorXd slope;
  double offset = 0.0;

  template <typename Derived>
  double operator()(const Eigen::MatrixBase<Derived>& p) const {
    return slope.dot(p) + offset;
  }
};

/// SIC decodings charged to one BS: sum over i = 1..J of (J - i + 1),
/// using the configured cluster size J for every BS.
inline double sic_layers_per_bs(int cluster_size) { return 0.5 * cluster_size * (cluster_size + 1); }

/// Network-wide affine model. Throws std::invalid_argument for PCM-3.
AffinePower affine_pcm(PcmKind pcm, const ClusterLayout& layout, const NetworkConfig& cfg);

/// Consumption attributable to BS `bs` alone, over its own variables.
AffinePower affine_pcm_bs(PcmKind pcm, const ClusterLayout& layout, const NetworkConfig& cfg, int bs);

/// `rates_by_user` is required for PCM-3 only.
PowerBreakdown consumption(PcmKind pcm, const PowerAllocation& p, const NetworkConfig& cfg,
                           const std::optional<Eigen::VectorXd>& rates_by_user = std::nullopt);

/// R_u / ((1 + rho) p_u + decodings_u * kappa), receiver-side terms only.
/// A CoMP user's power is the sum over its legs.
Eigen::VectorXd user_energy_efficiency(const PowerAllocation& p, const Eigen::VectorXd& rates_by_user,
                                       const NetworkConfig& cfg);

}  // namespace nomaee
