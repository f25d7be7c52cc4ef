#include "nomaee/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

namespace nomaee {

RunResult run_on(const CnrTable& cnr, const NetworkConfig& cfg, std::uint64_t seed, ScenarioKind scenario,
                 Algorithm algorithm) {
  RunResult run;
  run.seed = seed;
  run.scenario = scenario;
  run.algorithm = algorithm;
  if (algorithm == Algorithm::Ilo) {
    if (scenario != ScenarioKind::ConventionalNoma) {
      throw std::invalid_argument("ILO is defined for conventional NOMA only");
    }
    run.outcome = solve_ilo(cnr, cfg);
  } else {
    run.outcome = solve_global(scenario, cnr, cfg);
  }
  run.feasible = run.outcome.feasible;
  run.allocation = run.outcome.allocation;
  if (!run.feasible) return run;
  run.rates = run.outcome.rates;
  run.throughput = run.rates.sum();
  run.power = consumption(cfg.pcm_eval, run.allocation, cfg, run.rates);
  run.ee = run.throughput / run.power.total;
  return run;
}

RunResult run_once(const ValidatedConfig& cfg, std::uint64_t seed, ScenarioKind scenario, Algorithm algorithm) {
  try {
    return run_on(sample_cnr(cfg, seed), *cfg, seed, scenario, algorithm);
  } catch (const SolverError& e) {
    throw SolverError("seed " + std::to_string(seed) + ": " + e.what());
  }
}

double ee_under(const RunResult& run, PcmKind pcm, const NetworkConfig& cfg) {
  if (!run.feasible) return std::numeric_limits<double>::quiet_NaN();
  return run.throughput / consumption(pcm, run.allocation, cfg, run.rates).total;
}

Interval confidence_interval(std::span<const double> samples) {
  if (samples.size() < 2) throw std::invalid_argument("confidence_interval needs at least two samples");
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double stderr_ = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return {mean, 1.96 * stderr_};
}

NetworkConfig config_for(const NetworkConfig& base, const SweepPoint& point) {
  NetworkConfig cfg = base;
  cfg.r_min_uniform = point.r_min;
  cfg.r_min_per_user.clear();
  cfg.kappa = point.kappa;
  cfg.pcm_opt = point.pcm_opt;
  cfg.scenario = point.scenario;
  return cfg;
}

namespace {

Interval summarize(const std::vector<double>& xs) {
  if (xs.size() >= 2) return confidence_interval(xs);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return {xs.empty() ? nan : xs.front(), nan};
}

}  // namespace

CampaignResult run_campaign(const NetworkConfig& base, const CampaignSpec& spec) {
  if (spec.n_runs < 2) throw std::invalid_argument("a campaign needs at least two runs");
  const ValidatedConfig vbase = validate_config(base);
  const auto n_points = spec.points.size();
  const auto n_runs = static_cast<std::size_t>(spec.n_runs);

  std::vector<ValidatedConfig> configs;
  for (const auto& pt : spec.points) configs.push_back(validate_config(config_for(base, pt)));

  CampaignResult result;
  result.runs.assign(n_points, std::vector<RunResult>(n_runs));

  // One task per seed: the CNR table is drawn once and shared by every point.
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_runs) return;
      const std::uint64_t seed = spec.base_seed + i + 1;
      try {
        const CnrTable cnr = sample_cnr(vbase, seed);
        for (std::size_t k = 0; k < n_points; ++k) {
          const SweepPoint& pt = spec.points[k];
          try {
            result.runs[k][i] = run_on(cnr, *configs[k], seed, pt.scenario, pt.algorithm);
          } catch (const SolverError& e) {
            throw SolverError("seed " + std::to_string(seed) + ": " + e.what());
          }
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n_runs;
        return;
      }
    }
  };
  const int jobs = std::max(1, spec.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  // Seeds feasible for every scheme sharing (r_min, kappa, pcm_opt).
  using Key = std::tuple<double, double, int>;
  std::map<Key, std::vector<bool>> common;
  for (std::size_t k = 0; k < n_points; ++k) {
    const SweepPoint& pt = spec.points[k];
    auto [it, fresh] = common.try_emplace(Key{pt.r_min, pt.kappa, static_cast<int>(pt.pcm_opt)},
                                          std::vector<bool>(n_runs, true));
    for (std::size_t i = 0; i < n_runs; ++i) it->second[i] = it->second[i] && result.runs[k][i].feasible;
  }

  for (std::size_t k = 0; k < n_points; ++k) {
    const SweepPoint& pt = spec.points[k];
    const auto& mask = common.at(Key{pt.r_min, pt.kappa, static_cast<int>(pt.pcm_opt)});
    const NetworkConfig& cfg = *configs[k];
    for (PcmKind eval : spec.eval_pcms) {
      McReport rep;
      rep.point = pt;
      rep.pcm_eval = eval;
      rep.averaging = spec.averaging;
      rep.n_runs = spec.n_runs;
      std::vector<double> ee, thr, alloc;
      for (std::size_t i = 0; i < n_runs; ++i) {
        const RunResult& run = result.runs[k][i];
        if (!run.feasible) continue;
        ++rep.n_feasible;
        if (spec.averaging == Averaging::CommonFeasible && !mask[i]) continue;
        ee.push_back(ee_under(run, eval, cfg));
        thr.push_back(run.throughput);
        alloc.push_back(run.allocation.watts.sum());
      }
      rep.n_averaged = static_cast<int>(ee.size());
      rep.outage_ratio = 1.0 - static_cast<double>(rep.n_feasible) / rep.n_runs;
      rep.ee = summarize(ee);
      rep.throughput = summarize(thr);
      rep.alloc_power_mean = alloc.empty() ? std::numeric_limits<double>::quiet_NaN()
                                           : std::accumulate(alloc.begin(), alloc.end(), 0.0) / alloc.size();
      result.reports.push_back(rep);
    }
  }
  return result;
}

void write_report_csv(std::ostream& out, const std::vector<McReport>& reports) {
  out << "scenario,algorithm,pcm_opt,pcm_eval,r_min_bps,kappa_w,n_runs,outage_ratio,ee_mean,ee_ci,thr_mean,"
         "thr_ci,alloc_power_mean_w,averaging\n";
  const auto old = out.precision(10);
  for (const McReport& r : reports) {
    out << to_string(r.point.scenario) << ',' << to_string(r.point.algorithm) << ',' << to_string(r.point.pcm_opt)
        << ',' << to_string(r.pcm_eval) << ',' << r.point.r_min << ',' << r.point.kappa << ',' << r.n_runs << ','
        << r.outage_ratio << ',' << r.ee.mean << ',' << r.ee.half_width << ',' << r.throughput.mean << ','
        << r.throughput.half_width << ',' << r.alloc_power_mean << ','
        << (r.averaging == Averaging::CommonFeasible ? "common" : "all") << '\n';
  }
  out.precision(old);
}

void write_user_csv(std::ostream& out, const CampaignResult& result, const CampaignSpec& spec,
                    const NetworkConfig& base) {
  out << "seed,scenario,algorithm,pcm_opt,r_min_bps,kappa_w,user,bs,rank,power_w,rate_bps,user_ee\n";
  const auto old = out.precision(10);
  for (std::size_t k = 0; k < spec.points.size(); ++k) {
    const SweepPoint& pt = spec.points[k];
    const NetworkConfig cfg = config_for(base, pt);
    for (const RunResult& run : result.runs[k]) {
      if (!run.feasible) continue;
      const ClusterLayout& layout = run.allocation.layout;
      const Eigen::VectorXd user_ee = user_energy_efficiency(run.allocation, run.rates, cfg);
      for (int v = 0; v < layout.n_vars(); ++v) {
        const int u = layout.user_of(v);
        out << run.seed << ',' << to_string(pt.scenario) << ',' << to_string(pt.algorithm) << ','
            << to_string(pt.pcm_opt) << ',' << pt.r_min << ',' << pt.kappa << ',' << u << ',' << layout.bs_of(v)
            << ',' << layout.rank_of(v) + 1 << ',' << run.allocation.watts(v) << ',' << run.rates(u) << ','
            << user_ee(u) << '\n';
      }
    }
  }
  out.precision(old);
}

std::string summary_line(const McReport& r) {
  std::ostringstream s;
  s << std::setprecision(4) << to_string(r.point.scenario) << '/' << to_string(r.point.algorithm)
    << " opt=" << to_string(r.point.pcm_opt) << " eval=" << to_string(r.pcm_eval) << " r_min=" << r.point.r_min
    << " kappa=" << r.point.kappa << " outage=" << r.outage_ratio << " ee=" << r.ee.mean << "+-"
    << r.ee.half_width << " thr=" << r.throughput.mean << " (n=" << r.n_averaged << ")";
  return s.str();
}

}  // namespace nomaee
