#include "nomaee/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "nomaee/toml_lite.hpp"
#include "nomaee/units.hpp"

namespace nomaee {

double NetworkConfig::r_min(int user) const {
  if (r_min_per_user.empty()) return r_min_uniform;
  return r_min_per_user.at(static_cast<std::size_t>(user));
}

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ConfigError(field, what);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }
bool finite_nonnegative(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

ValidatedConfig validate_config(const NetworkConfig& cfg) {
  require(cfg.n_bs >= 1, "n_bs", "n_bs must be at least 1");
  require(cfg.users_per_cluster >= 1, "users_per_cluster", "users_per_cluster must be at least 1");
  require(finite_positive(cfg.cell_radius), "cell_radius", "cell_radius must be positive");
  require(finite_positive(cfg.inter_bs_distance), "inter_bs_distance",
          "inter_bs_distance must be positive");
  if (cfg.non_comp_distances.size() != static_cast<std::size_t>(cfg.users_per_cluster - 1)) {
    throw ConfigError("non_comp_distances",
                      "expected users_per_cluster - 1 = " + std::to_string(cfg.users_per_cluster - 1) +
                          " entries, got " + std::to_string(cfg.non_comp_distances.size()));
  }
  for (double d : cfg.non_comp_distances) {
    require(finite_positive(d), "non_comp_distances", "distances must be positive");
  }
  if (!cfg.r_min_per_user.empty()) {
    require(cfg.r_min_per_user.size() == static_cast<std::size_t>(cfg.users_total()), "r_min_per_user",
            "expected one entry per user");
    for (double r : cfg.r_min_per_user) {
      require(finite_nonnegative(r), "r_min_per_user", "rates must be nonnegative");
    }
  }
  require(finite_nonnegative(cfg.r_min_uniform), "r_min", "r_min must be nonnegative");
  require(finite_positive(cfg.p_max), "p_max", "p_max must be positive");
  require(finite_positive(cfg.bandwidth_b), "bandwidth_b", "bandwidth_b must be positive");
  require(finite_positive(cfg.omega), "omega", "omega must be positive");
  require(finite_positive(cfg.n0), "n0", "n0 must be positive");
  require(finite_nonnegative(cfg.p_fix), "p_fix", "p_fix must be nonnegative");
  require(finite_nonnegative(cfg.rho), "rho", "rho must be nonnegative");
  require(finite_nonnegative(cfg.kappa), "kappa", "kappa must be nonnegative");
  require(finite_nonnegative(cfg.rho_rate), "rho_rate", "rho_rate must be nonnegative");
  require(cfg.pcm_opt != PcmKind::Pcm3RateLinear, "pcm_opt",
          "pcm3 depends on rates and can only be used as pcm_eval");

  const SolverSettings& s = cfg.solver;
  require(finite_positive(s.epsilon_dinkelbach), "solver.epsilon_dinkelbach",
          "epsilon_dinkelbach must be positive");
  require(finite_positive(s.epsilon_sca), "solver.epsilon_sca", "epsilon_sca must be positive");
  require(finite_positive(s.epsilon_inner), "solver.epsilon_inner", "epsilon_inner must be positive");
  require(s.l_max >= 1, "solver.l_max", "l_max must be at least 1");
  require(finite_positive(s.barrier_t0), "solver.barrier_t0", "barrier_t0 must be positive");
  require(std::isfinite(s.barrier_growth) && s.barrier_growth > 1.0, "solver.barrier_growth",
          "barrier_growth must exceed 1");
  return ValidatedConfig(cfg);
}

NetworkConfig table_one_config(double r_min_bps) {
  NetworkConfig cfg;
  cfg.r_min_uniform = r_min_bps;
  cfg.p_max = dbm_to_watts(43.0);
  cfg.n0 = dbm_to_watts(-139.0);
  cfg.p_fix = dbm_to_watts(30.0);
  return cfg;
}

std::string_view to_string(ScenarioKind s) {
  return s == ScenarioKind::Jtcn ? "jtcn" : "noma";
}

std::string_view to_string(Algorithm a) { return a == Algorithm::Ilo ? "ilo" : "global"; }

std::string_view to_string(PcmKind p) {
  switch (p) {
    case PcmKind::Pcm1: return "pcm1";
    case PcmKind::Pcm2: return "pcm2";
    case PcmKind::Pcm3RateLinear: return "pcm3";
    case PcmKind::PcmKappa: return "pcmk";
  }
  return "?";
}

ScenarioKind parse_scenario(std::string_view s) {
  if (s == "noma" || s == "conventional") return ScenarioKind::ConventionalNoma;
  if (s == "jtcn") return ScenarioKind::Jtcn;
  throw ConfigError("scenario", "unknown scenario '" + std::string(s) + "'");
}

Algorithm parse_algorithm(std::string_view s) {
  if (s == "global") return Algorithm::Global;
  if (s == "ilo") return Algorithm::Ilo;
  throw ConfigError("algorithm", "unknown algorithm '" + std::string(s) + "'");
}

PcmKind parse_pcm(std::string_view s) {
  if (s == "pcm1") return PcmKind::Pcm1;
  if (s == "pcm2") return PcmKind::Pcm2;
  if (s == "pcm3") return PcmKind::Pcm3RateLinear;
  if (s == "pcmk" || s == "pcm-kappa" || s == "pcmkappa") return PcmKind::PcmKappa;
  throw ConfigError("pcm", "unknown power consumption model '" + std::string(s) + "'");
}

namespace {

// "43 dBm", "-139 dBm/Hz", "19.95 W", "19.95" or a bare number.
double power_value(const toml::Value& v, const std::string& field) {
  if (v.is_number()) return v.as_number();
  if (!v.is_string()) throw ConfigError(field, "expected a number or a string with a unit");
  std::istringstream in(v.as_string());
  double x = 0.0;
  std::string unit;
  if (!(in >> x)) throw ConfigError(field, "cannot parse '" + v.as_string() + "'");
  in >> unit;
  if (unit == "dBm" || unit == "dBm/Hz") return dbm_to_watts(x);
  if (unit.empty() || unit == "W" || unit == "W/Hz") return x;
  throw ConfigError(field, "unknown unit '" + unit + "'");
}

int int_value(const toml::Value& v, const std::string& field) {
  double x = v.as_number();
  if (x != std::floor(x)) throw ConfigError(field, "expected an integer");
  return static_cast<int>(x);
}

std::vector<double> number_list(const toml::Value& v, const std::string& field) {
  std::vector<double> out;
  if (!v.is_array()) throw ConfigError(field, "expected an array");
  for (const auto& e : v.as_array()) out.push_back(e.as_number());
  return out;
}

}  // namespace

NetworkConfig parse_config(std::string_view toml_text) {
  toml::Document doc;
  try {
    doc = toml::parse(toml_text);
  } catch (const toml::ParseError& e) {
    throw ConfigError("config", e.what());
  }
  NetworkConfig cfg = table_one_config();
  for (const auto& [key, v] : doc) {
    try {
      if (key == "n_bs") cfg.n_bs = int_value(v, key);
      else if (key == "cell_radius") cfg.cell_radius = v.as_number();
      else if (key == "inter_bs_distance") cfg.inter_bs_distance = v.as_number();
      else if (key == "users_per_cluster") cfg.users_per_cluster = int_value(v, key);
      else if (key == "non_comp_distances") cfg.non_comp_distances = number_list(v, key);
      else if (key == "r_min" || key == "r_min_bps") cfg.r_min_uniform = v.as_number();
      else if (key == "r_min_per_user") cfg.r_min_per_user = number_list(v, key);
      else if (key == "p_max") cfg.p_max = power_value(v, key);
      else if (key == "bandwidth_b") cfg.bandwidth_b = v.as_number();
      else if (key == "omega") cfg.omega = v.as_number();
      else if (key == "n0") cfg.n0 = power_value(v, key);
      else if (key == "p_fix") cfg.p_fix = power_value(v, key);
      else if (key == "rho") cfg.rho = v.as_number();
      else if (key == "kappa") cfg.kappa = power_value(v, key);
      else if (key == "rho_rate") cfg.rho_rate = v.as_number();
      else if (key == "scenario") cfg.scenario = parse_scenario(v.as_string());
      else if (key == "pcm_opt") cfg.pcm_opt = parse_pcm(v.as_string());
      else if (key == "pcm_eval") cfg.pcm_eval = parse_pcm(v.as_string());
      else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(v.as_number());
      else if (key == "solver.epsilon_dinkelbach") cfg.solver.epsilon_dinkelbach = v.as_number();
      else if (key == "solver.epsilon_sca") cfg.solver.epsilon_sca = v.as_number();
      else if (key == "solver.epsilon_inner") cfg.solver.epsilon_inner = v.as_number();
      else if (key == "solver.l_max") cfg.solver.l_max = int_value(v, key);
      else if (key == "solver.barrier_t0") cfg.solver.barrier_t0 = v.as_number();
      else if (key == "solver.barrier_growth") cfg.solver.barrier_growth = v.as_number();
      else throw ConfigError(key, "unknown key");
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(key, e.what());
    }
  }
  return cfg;
}

NetworkConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace nomaee
