#include <cmath>

#include "nomaee/solver.hpp"

namespace nomaee {

namespace {

bool same_noise(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return ((a - b).cwiseAbs().array() <= 1e-9 * a.cwiseAbs().array()).all();
}

}  // namespace

SolveOutcome solve_ilo(const CnrTable& cnr, const NetworkConfig& cfg) {
  ClusterLayout layout = cluster_layout(cnr, cfg, ScenarioKind::ConventionalNoma, best_serving_bs(cnr));
  const SinrModel full = build_sinr_model(layout, cnr, cfg);
  const AffinePower network_power = affine_pcm(cfg.pcm_opt, layout, cfg);
  const int n_bs = layout.n_bs();

  SolveOutcome out;
  Eigen::VectorXd p = Eigen::VectorXd::Zero(layout.n_vars());
  std::vector<Eigen::VectorXd> noise_seen(n_bs);
  double previous = 0.0;
  bool converged = false;

  for (int round = 1; round <= cfg.solver.l_max && !converged; ++round) {
    out.ilo_rounds = round;
    for (int b = 0; b < n_bs; ++b) {
      const SinrModel local = restrict_to_bs(full, layout, b, p);
      noise_seen[b] = local.noise;
      SolveOutcome step = maximize_ee(local, affine_pcm_bs(cfg.pcm_opt, layout, cfg, b), cfg.solver);
      out.sca_iterations += step.sca_iterations;
      out.dinkelbach_iterations += step.dinkelbach_iterations;
      out.inner_iterations += step.inner_iterations;
      out.iteration_limit = out.iteration_limit || step.iteration_limit;
      out.interior_start_failed = out.interior_start_failed || step.interior_start_failed;
      if (!step.feasible) {
        out.allocation.layout = std::move(layout);
        return out;
      }
      p.segment(layout.offset[b], static_cast<Eigen::Index>(layout.members[b].size())) = step.allocation.watts;
    }

    const double ee = full.rates(p).sum() / network_power(p);
    out.ee_trace.push_back(ee);
    bool fixed_point = true;
    for (int b = 0; b < n_bs && fixed_point; ++b) {
      fixed_point = same_noise(noise_seen[b], restrict_to_bs(full, layout, b, p).noise);
    }
    const bool settled = round > 1 && std::abs(ee - previous) <= cfg.solver.epsilon_sca * ee;
    converged = fixed_point || (settled && allocation_feasible(full, p));
    previous = ee;
  }

  out.feasible = allocation_feasible(full, p);
  out.iteration_limit = out.iteration_limit || !converged;
  out.allocation = PowerAllocation{std::move(layout), p};
  out.rates = rates_by_user(full, p, cnr.n_users());
  out.ee_opt = previous;
  return out;
}

}  // namespace nomaee
