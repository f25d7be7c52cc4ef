#include "nomaee/pcm.hpp"

#include <stdexcept>

namespace nomaee {

namespace {

double radiated_slope(PcmKind pcm, const NetworkConfig& cfg) {
  return pcm == PcmKind::PcmKappa ? 1.0 + cfg.rho : 1.0;
}

double per_bs_constant(PcmKind pcm, const NetworkConfig& cfg) {
  switch (pcm) {
    case PcmKind::Pcm1: return 0.0;
    case PcmKind::Pcm2:
    case PcmKind::Pcm3RateLinear: return cfg.p_fix;
    case PcmKind::PcmKappa: return cfg.p_fix + cfg.kappa * sic_layers_per_bs(cfg.users_per_cluster);
  }
  return 0.0;
}

}  // namespace

AffinePower affine_pcm(PcmKind pcm, const ClusterLayout& layout, const NetworkConfig& cfg) {
  if (pcm == PcmKind::Pcm3RateLinear) throw std::invalid_argument("PCM-3 is not affine in the powers");
  return {Eigen::VectorXd::Constant(layout.n_vars(), radiated_slope(pcm, cfg)),
          layout.n_bs() * per_bs_constant(pcm, cfg)};
}

AffinePower affine_pcm_bs(PcmKind pcm, const ClusterLayout& layout, const NetworkConfig& cfg, int bs) {
  if (pcm == PcmKind::Pcm3RateLinear) throw std::invalid_argument("PCM-3 is not affine in the powers");
  return {Eigen::VectorXd::Constant(static_cast<Eigen::Index>(layout.members.at(bs).size()),
                                    radiated_slope(pcm, cfg)),
          per_bs_constant(pcm, cfg)};
}

PowerBreakdown consumption(PcmKind pcm, const PowerAllocation& p, const NetworkConfig& cfg,
                           const std::optional<Eigen::VectorXd>& rates_by_user) {
  PowerBreakdown out;
  out.transmit = p.watts.sum();
  const int n_bs = p.layout.n_bs();
  switch (pcm) {
    case PcmKind::Pcm1:
      break;
    case PcmKind::Pcm2:
      out.circuit = n_bs * cfg.p_fix;
      break;
    case PcmKind::Pcm3RateLinear:
      if (!rates_by_user) throw std::invalid_argument("PCM-3 needs the user rates");
      out.circuit = n_bs * cfg.p_fix;
      out.signal_processing = cfg.rho_rate * rates_by_user->sum();
      break;
    case PcmKind::PcmKappa:
      out.circuit = n_bs * cfg.p_fix;
      out.signal_processing = cfg.rho * out.transmit;
      out.sic = n_bs * cfg.kappa * sic_layers_per_bs(cfg.users_per_cluster);
      break;
  }
  out.total = out.transmit + out.circuit + out.signal_processing + out.sic;
  return out;
}

Eigen::VectorXd user_energy_efficiency(const PowerAllocation& p, const Eigen::VectorXd& rates_by_user,
                                       const NetworkConfig& cfg) {
  const ClusterLayout& layout = p.layout;
  Eigen::VectorXd power = Eigen::VectorXd::Zero(rates_by_user.size());
  Eigen::VectorXd decodings = Eigen::VectorXd::Zero(rates_by_user.size());
  for (int v = 0; v < layout.n_vars(); ++v) {
    const int u = layout.user_of(v);
    power(u) += p.watts(v);
    decodings(u) = decoding_count(layout.rank_of(v) + 1, layout.cluster_size);
  }
  // The CoMP user is last in every cluster and decodes only its own signal.
  Eigen::VectorXd denom = (1.0 + cfg.rho) * power + cfg.kappa * decodings;
  return rates_by_user.cwiseQuotient(denom);
}

}  // namespace nomaee
