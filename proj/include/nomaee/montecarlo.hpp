#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "nomaee/config.hpp"
#include "nomaee/pcm.hpp"
#include "nomaee/solver.hpp"

namespace nomaee {

struct RunResult {
  std::uint64_t seed = 0;
  ScenarioKind scenario = ScenarioKind::Jtcn;
  Algorithm algorithm = Algorithm::Global;
  bool feasible = false;
  PowerAllocation allocation;
  Eigen::VectorXd rates;  // bits/s by user id
  double throughput = 0.0;
  double ee = 0.0;        // under the config's pcm_eval
  PowerBreakdown power;   // under pcm_eval
  SolveOutcome outcome;
};

/// Places users, draws the channel and solves one instance. Metrics use
/// cfg.pcm_eval regardless of cfg.pcm_opt.
RunResult run_once(const ValidatedConfig& cfg, std::uint64_t seed, ScenarioKind scenario, Algorithm algorithm);

/// Same as run_once on a precomputed CNR table (common random numbers).
RunResult run_on(const CnrTable& cnr, const NetworkConfig& cfg, std::uint64_t seed, ScenarioKind scenario,
                 Algorithm algorithm);

/// Network EE of a feasible run under another consumption model.
double ee_under(const RunResult& run, PcmKind pcm, const NetworkConfig& cfg);

struct Interval {
  double mean = 0.0;
  double half_width = 0.0;
};

/// Normal-approximation 95% interval, mean +- 1.96 * stddev / sqrt(n).
/// Throws std::invalid_argument for fewer than two samples.
Interval confidence_interval(std::span<const double> samples);

struct SweepPoint {
  double r_min = 1.5e6;
  double kappa = 0.5;
  PcmKind pcm_opt = PcmKind::PcmKappa;
  ScenarioKind scenario = ScenarioKind::Jtcn;
  Algorithm algorithm = Algorithm::Global;
};

enum class Averaging {
  AllFeasible,     // each point averages over its own feasible runs
  CommonFeasible,  // only seeds feasible for every scheme at the same (r_min, kappa, pcm_opt)
};

struct McReport {
  SweepPoint point;
  PcmKind pcm_eval = PcmKind::PcmKappa;
  int n_runs = 0;
  int n_feasible = 0;
  int n_averaged = 0;
  double outage_ratio = 0.0;
  Interval ee;
  Interval throughput;
  double alloc_power_mean = 0.0;
  Averaging averaging = Averaging::AllFeasible;
};

struct CampaignSpec {
  std::vector<SweepPoint> points;
  std::vector<PcmKind> eval_pcms{PcmKind::PcmKappa};
  int n_runs = 100;
  std::uint64_t base_seed = 0;
  int jobs = 1;
  Averaging averaging = Averaging::AllFeasible;
};

struct CampaignResult {
  std::vector<McReport> reports;             // points x eval_pcms, point-major
  std::vector<std::vector<RunResult>> runs;  // per point, ordered by seed
};

/// Runs seeds base_seed+1 .. base_seed+n_runs for every point; the same
/// seed yields the same channel draw for every point.
CampaignResult run_campaign(const NetworkConfig& base, const CampaignSpec& spec);

/// Config for one sweep point.
NetworkConfig config_for(const NetworkConfig& base, const SweepPoint& point);

void write_report_csv(std::ostream& out, const std::vector<McReport>& reports);
void write_user_csv(std::ostream& out, const CampaignResult& result, const CampaignSpec& spec,
                    const NetworkConfig& base);
std::string summary_line(const McReport& report);

}  // namespace nomaee
