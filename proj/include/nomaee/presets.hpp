#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nomaee/montecarlo.hpp"

namespace nomaee {

struct FigurePreset {
  std::string id;
  CampaignSpec spec;
  bool per_user = false;  // also write the per-user CSV
};

/// R^min grid shared by the rate sweeps, 10 kbps to 3 Mbps.
std::vector<double> rate_grid();

std::vector<std::string_view> figure_ids();

/// Throws std::invalid_argument for an unknown id.
FigurePreset figure_preset(std::string_view id, const NetworkConfig& base);

}  // namespace nomaee
