#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nomaee {

enum class ScenarioKind { ConventionalNoma, Jtcn };

enum class Algorithm { Global, Ilo };

/// Power consumption model. Parameters live in NetworkConfig so that the
/// same allocation can be re-evaluated under several models.
enum class PcmKind {
  Pcm1,            // radiated power only
  Pcm2,            // radiated + fixed circuit power per BS
  Pcm3RateLinear,  // PCM-2 plus rho_rate * R per user
  PcmKappa         // PCM-2 plus rho * p and kappa per SIC decoding
};

struct SolverSettings {
  double epsilon_dinkelbach = 1e-6;
  double epsilon_sca = 1e-6;
  double epsilon_inner = 1e-9;
  int l_max = 100;
  double barrier_t0 = 1.0;
  double barrier_growth = 10.0;
};

struct NetworkConfig {
  int n_bs = 2;
  double cell_radius = 600.0;         // m
  double inter_bs_distance = 1000.0;  // m
  int users_per_cluster = 3;          // J_b, cluster size including the cell-edge user
  std::vector<double> non_comp_distances{30.0, 200.0};  // m, J_b - 1 entries
  // Per-user minimum rate (bits/s). User ids: BS-major non-CoMP users,
  // then the single cell-edge user. Empty means "use r_min_uniform".
  std::vector<double> r_min_per_user;
  double r_min_uniform = 1.5e6;
  double p_max = 19.952623149688797;  // W (43 dBm)
  double bandwidth_b = 180e3;         // Hz per resource block
  double omega = 100.0;               // resource blocks per cluster
  double n0 = 1.2589254117941662e-17; // W/Hz (-139 dBm/Hz)
  double p_fix = 1.0;                 // W per BS (30 dBm)
  double rho = 0.1;
  double kappa = 0.5;      // W per SIC decoding
  double rho_rate = 1e-8;  // W per bit/s, PCM-3 only
  ScenarioKind scenario = ScenarioKind::Jtcn;
  PcmKind pcm_opt = PcmKind::PcmKappa;
  PcmKind pcm_eval = PcmKind::PcmKappa;
  SolverSettings solver;
  std::uint64_t seed = 1;

  int users_total() const { return n_bs * (users_per_cluster - 1) + 1; }
  int edge_user() const { return n_bs * (users_per_cluster - 1); }
  double r_min(int user) const;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A NetworkConfig that has passed validate_config. Only constructible
/// through validation.
class ValidatedConfig {
 public:
  const NetworkConfig& operator*() const noexcept { return cfg_; }
  const NetworkConfig* operator->() const noexcept { return &cfg_; }
  const NetworkConfig& get() const noexcept { return cfg_; }

 private:
  friend ValidatedConfig validate_config(const NetworkConfig& cfg);
  explicit ValidatedConfig(NetworkConfig cfg) : cfg_(std::move(cfg)) {}
  NetworkConfig cfg_;
};

/// Throws ConfigError naming the first violated invariant.
ValidatedConfig validate_config(const NetworkConfig& cfg);

/// Default two-cell network with the given uniform rate requirement.
NetworkConfig table_one_config(double r_min_bps = 1.5e6);

/// Loads a TOML config; keys mirror NetworkConfig fields. Power fields
/// accept either a number (Watts) or a string such as "43 dBm".
NetworkConfig load_config(const std::filesystem::path& path);
NetworkConfig parse_config(std::string_view toml_text);

std::string_view to_string(ScenarioKind s);
std::string_view to_string(Algorithm a);
std::string_view to_string(PcmKind p);
ScenarioKind parse_scenario(std::string_view s);
Algorithm parse_algorithm(std::string_view s);
PcmKind parse_pcm(std::string_view s);

}  // namespace nomaee
