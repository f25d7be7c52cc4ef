#include "nomaee/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "nomaee/channel.hpp"
#include "nomaee/montecarlo.hpp"
#include "nomaee/presets.hpp"
#include "nomaee/toml_lite.hpp"
#include "nomaee/units.hpp"

namespace nomaee {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Overrides {
  std::string config;
  std::string scenario;
  std::string algorithm;
  std::string pcm_opt;
  std::string pcm_eval;
  std::optional<double> r_min;
  std::optional<double> kappa;
};

NetworkConfig base_config(const Overrides& o, bool config_required) {
  NetworkConfig cfg = table_one_config();
  if (!o.config.empty()) {
    cfg = load_config(o.config);
  } else if (config_required) {
    throw UsageError("--config is required");
  }
  if (!o.scenario.empty()) cfg.scenario = parse_scenario(o.scenario);
  if (!o.pcm_opt.empty()) cfg.pcm_opt = parse_pcm(o.pcm_opt);
  if (!o.pcm_eval.empty()) cfg.pcm_eval = parse_pcm(o.pcm_eval);
  if (o.r_min) {
    cfg.r_min_uniform = *o.r_min;
    cfg.r_min_per_user.clear();
  }
  if (o.kappa) cfg.kappa = *o.kappa;
  return cfg;
}

void write_trace(const fs::path& path, const SolveOutcome& outcome) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path.string());
  f << "sca_iteration,dinkelbach_iteration,lambda,f_lambda,ee_true,max_residual\n" << std::setprecision(12);
  for (const TraceRow& r : outcome.trace) {
    f << r.sca_iteration << ',' << r.dinkelbach_iteration << ',' << r.lambda << ',' << r.f_lambda << ','
      << r.ee_true << ',' << r.max_residual << '\n';
  }
}

int cmd_solve(const Overrides& o, std::uint64_t seed, const std::string& trace, const std::string& cnr_csv,
              std::ostream& out) {
  const ValidatedConfig cfg = validate_config(base_config(o, true));
  const Algorithm algorithm = o.algorithm.empty() ? Algorithm::Global : parse_algorithm(o.algorithm);
  if (algorithm == Algorithm::Ilo && cfg->scenario != ScenarioKind::ConventionalNoma) {
    throw UsageError("--algorithm ilo requires --scenario noma");
  }
  if (!cnr_csv.empty()) {
    const Placement placement = place_users(cfg, seed);
    std::ofstream f(cnr_csv);
    if (!f) throw UsageError("cannot write " + cnr_csv);
    write_cnr_csv(f, cnr_table(draw_channel(placement, seed), *cfg), placement);
  }
  const RunResult run = run_once(cfg, seed, cfg->scenario, algorithm);
  if (!trace.empty()) write_trace(trace, run.outcome);

  out << "scenario " << to_string(run.scenario) << ", algorithm " << to_string(run.algorithm) << ", seed " << seed
      << ", pcm_opt " << to_string(cfg->pcm_opt) << ", pcm_eval " << to_string(cfg->pcm_eval) << '\n';
  if (!run.feasible) {
    out << "infeasible: the rate requirements cannot be met within P_max\n";
    return kExitInfeasible;
  }
  const ClusterLayout& layout = run.allocation.layout;
  out << std::setprecision(6);
  out << "bs  rank  user  power_w       power_dbm  rate_bps\n";
  for (int v = 0; v < layout.n_vars(); ++v) {
    const int u = layout.user_of(v);
    const double p = run.allocation.watts(v);
    out << std::left << std::setw(4) << layout.bs_of(v) << std::setw(6) << layout.rank_of(v) + 1 << std::setw(6) << u
        << std::setw(14) << p << std::setw(11) << (p > 0 ? watts_to_dbm(p) : -INFINITY) << run.rates(u) << '\n';
  }
  out << std::right;
  out << "throughput_bps " << run.throughput << '\n';
  out << "power_w " << run.power.total << " (transmit " << run.power.transmit << ", circuit " << run.power.circuit
      << ", sic " << run.power.sic << ")\n";
  out << "ee_bits_per_joule " << run.ee << '\n';
  out << "iterations: sca " << run.outcome.sca_iterations << ", dinkelbach " << run.outcome.dinkelbach_iterations
      << ", newton " << run.outcome.inner_iterations;
  if (algorithm == Algorithm::Ilo) out << ", ilo rounds " << run.outcome.ilo_rounds;
  out << '\n';
  if (run.outcome.iteration_limit) out << "warning: iteration limit reached\n";
  if (run.outcome.interior_start_failed) out << "warning: no interior start, returning the min-power point\n";
  return kExitOk;
}

std::vector<std::string> string_list(const toml::Document& doc, const std::string& key,
                                     const std::string& fallback) {
  auto it = doc.find(key);
  if (it == doc.end()) return {fallback};
  std::vector<std::string> out;
  if (it->second.is_string()) return {it->second.as_string()};
  for (const auto& v : it->second.as_array()) out.push_back(v.as_string());
  return out;
}

std::vector<double> number_list(const toml::Document& doc, const std::string& key, std::optional<double> fallback) {
  auto it = doc.find(key);
  if (it == doc.end()) {
    if (!fallback) throw UsageError("sweep file needs '" + key + "'");
    return {*fallback};
  }
  if (it->second.is_number()) return {it->second.as_number()};
  std::vector<double> out;
  for (const auto& v : it->second.as_array()) out.push_back(v.as_number());
  if (out.empty()) throw UsageError("sweep file: '" + key + "' is empty");
  return out;
}

CampaignSpec load_sweep(const fs::path& path, const NetworkConfig& cfg, const Overrides& o) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open sweep file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  toml::Document doc;
  try {
    doc = toml::parse(buf.str());
  } catch (const std::exception& e) {
    throw UsageError("malformed sweep file: " + std::string(e.what()));
  }
  static const std::vector<std::string> known{"r_min_bps", "kappa_w",  "scenarios", "algorithms",
                                              "pcm_opt",   "pcm_eval", "averaging"};
  for (const auto& [key, v] : doc) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw UsageError("malformed sweep file: unknown key '" + key + "'");
    }
  }
  CampaignSpec spec;
  try {
    const auto rates = number_list(doc, "r_min_bps", std::nullopt);
    const auto kappas = number_list(doc, "kappa_w", cfg.kappa);
    const auto scenarios = string_list(doc, "scenarios", std::string(to_string(cfg.scenario)));
    const auto algorithms = string_list(doc, "algorithms", o.algorithm.empty() ? "global" : o.algorithm);
    const auto opts = string_list(doc, "pcm_opt", std::string(to_string(cfg.pcm_opt)));
    spec.eval_pcms.clear();
    for (const auto& e : string_list(doc, "pcm_eval", std::string(to_string(cfg.pcm_eval))))
      spec.eval_pcms.push_back(parse_pcm(e));
    const auto averaging = string_list(doc, "averaging", "all");
    if (averaging.size() != 1 || (averaging[0] != "all" && averaging[0] != "common")) {
      throw UsageError("averaging must be \"all\" or \"common\"");
    }
    spec.averaging = averaging[0] == "common" ? Averaging::CommonFeasible : Averaging::AllFeasible;
    for (double r : rates)
      for (double k : kappas)
        for (const auto& opt : opts)
          for (const auto& s : scenarios)
            for (const auto& a : algorithms) {
              SweepPoint pt{r, k, parse_pcm(opt), parse_scenario(s), parse_algorithm(a)};
              if (pt.algorithm == Algorithm::Ilo && pt.scenario != ScenarioKind::ConventionalNoma) continue;
              spec.points.push_back(pt);
            }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError("malformed sweep file: " + std::string(e.what()));
  }
  if (spec.points.empty()) throw UsageError("sweep file yields no sweep points");
  return spec;
}

int execute(const std::string& name, const NetworkConfig& cfg, CampaignSpec spec, bool per_user,
            const fs::path& out_dir, std::ostream& out) {
  validate_config(cfg);
  for (const SweepPoint& pt : spec.points) validate_config(config_for(cfg, pt));
  fs::create_directories(out_dir);
  const CampaignResult result = run_campaign(cfg, spec);
  {
    std::ofstream f(out_dir / (name + ".csv"));
    if (!f) throw UsageError("cannot write to " + out_dir.string());
    write_report_csv(f, result.reports);
  }
  if (per_user) {
    std::ofstream f(out_dir / (name + "_users.csv"));
    write_user_csv(f, result, spec, cfg);
  }
  for (const McReport& r : result.reports) out << summary_line(r) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energy-efficient power allocation for NOMA and JT-CoMP NOMA"};
  app.require_subcommand(1);

  Overrides o;
  std::uint64_t seed = 1;
  int runs = 100;
  int jobs = 1;
  std::string out_dir;
  std::string sweep;
  std::string trace;
  std::string cnr_csv;
  std::string figure;

  auto add_model_flags = [&](CLI::App* sub) {
    sub->add_option("--scenario", o.scenario, "noma | jtcn");
    sub->add_option("--pcm-opt", o.pcm_opt, "pcm1 | pcm2 | pcmk");
    sub->add_option("--pcm-eval", o.pcm_eval, "pcm1 | pcm2 | pcm3 | pcmk");
  };

  auto* solve = app.add_subcommand("solve", "Solve one channel draw");
  solve->add_option("--config", o.config, "TOML network config")->required();
  solve->add_option("--seed", seed, "Channel seed");
  solve->add_option("--algorithm", o.algorithm, "global | ilo");
  solve->add_option("--r-min", o.r_min, "Uniform rate requirement in bits/s");
  solve->add_option("--kappa", o.kappa, "SIC cost per layer in W");
  solve->add_option("--trace", trace, "Write the per-iteration trace CSV here");
  solve->add_option("--cnr-csv", cnr_csv, "Write the CNR table here");
  add_model_flags(solve);

  auto* campaign = app.add_subcommand("campaign", "Run a Monte-Carlo sweep");
  campaign->add_option("--config", o.config, "TOML network config")->required();
  campaign->add_option("--sweep", sweep, "TOML sweep file")->required();
  campaign->add_option("--out", out_dir, "Output directory")->required();
  campaign->add_option("--seed", seed, "Base seed");
  campaign->add_option("--runs", runs, "Runs per sweep point")->check(CLI::Range(2, 1000000));
  campaign->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  campaign->add_option("--algorithm", o.algorithm, "global | ilo");
  add_model_flags(campaign);

  auto* reproduce = app.add_subcommand("reproduce", "Regenerate the data behind one figure");
  reproduce->add_option("figure", figure, "fig3a | fig4 | fig5 | fig6 | fig7 | fig8")->required();
  reproduce->add_option("--out", out_dir, "Output directory")->required();
  reproduce->add_option("--config", o.config, "TOML network config (default: built-in two-cell network)");
  reproduce->add_option("--seed", seed, "Base seed");
  reproduce->add_option("--runs", runs, "Runs per sweep point")->check(CLI::Range(2, 1000000));
  reproduce->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "Check a config file");
  validate->add_option("--config", o.config, "TOML network config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* failed = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << failed->help();
    return kExitUsage;
  }

  try {
    if (*solve) return cmd_solve(o, seed, trace, cnr_csv, out);
    if (*validate) {
      const ValidatedConfig cfg = validate_config(base_config(o, true));
      out << "ok: " << cfg->n_bs << " BSs, " << cfg->users_per_cluster << " users per cluster, "
          << cfg->users_total() << " users\n";
      return kExitOk;
    }
    if (*campaign) {
      const NetworkConfig cfg = base_config(o, true);
      CampaignSpec spec = load_sweep(sweep, cfg, o);
      spec.n_runs = runs;
      spec.base_seed = seed;
      spec.jobs = jobs;
      return execute("campaign", cfg, std::move(spec), true, out_dir, out);
    }
    if (*reproduce) {
      const NetworkConfig cfg = base_config(o, false);
      FigurePreset fp;
      try {
        fp = figure_preset(figure, cfg);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      fp.spec.n_runs = runs;
      fp.spec.base_seed = seed;
      fp.spec.jobs = jobs;
      return execute(fp.id, cfg, std::move(fp.spec), fp.per_user, out_dir, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "solver failure: " << e.what() << '\n';
    return kExitSolverFailure;
  }
  return kExitUsage;
}

}  // namespace nomaee
