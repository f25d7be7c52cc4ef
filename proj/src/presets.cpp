#include "nomaee/presets.hpp"

#include <stdexcept>

namespace nomaee {

std::vector<double> rate_grid() { return {10e3, 0.5e6, 1e6, 1.5e6, 2e6, 2.5e6, 3e6}; }

std::vector<std::string_view> figure_ids() { return {"fig3a", "fig4", "fig5", "fig6", "fig7", "fig8"}; }

namespace {

void add(CampaignSpec& spec, double r_min, double kappa, PcmKind opt, ScenarioKind s, Algorithm a) {
  spec.points.push_back({r_min, kappa, opt, s, a});
}

}  // namespace

FigurePreset figure_preset(std::string_view id, const NetworkConfig& base) {
  FigurePreset fp;
  fp.id = std::string(id);
  CampaignSpec& spec = fp.spec;
  const double kappa = base.kappa;
  constexpr auto jtcn = ScenarioKind::Jtcn;
  constexpr auto noma = ScenarioKind::ConventionalNoma;
  constexpr auto global = Algorithm::Global;

  if (id == "fig3a") {
    for (double r : rate_grid()) add(spec, r, kappa, PcmKind::Pcm1, jtcn, global);
    spec.eval_pcms = {PcmKind::Pcm1, PcmKind::Pcm2, PcmKind::Pcm3RateLinear, PcmKind::PcmKappa};
  } else if (id == "fig4") {
    for (double r : rate_grid())
      for (PcmKind opt : {PcmKind::Pcm1, PcmKind::Pcm2, PcmKind::PcmKappa}) add(spec, r, kappa, opt, jtcn, global);
    spec.eval_pcms = {PcmKind::PcmKappa};
  } else if (id == "fig5") {
    for (double r : rate_grid()) {
      add(spec, r, kappa, PcmKind::PcmKappa, jtcn, global);
      add(spec, r, kappa, PcmKind::PcmKappa, noma, global);
      add(spec, r, kappa, PcmKind::PcmKappa, noma, Algorithm::Ilo);
    }
    spec.eval_pcms = {PcmKind::PcmKappa};
    spec.averaging = Averaging::CommonFeasible;
  } else if (id == "fig6") {
    for (double k : {0.0, 0.5, 2.5}) {
      add(spec, 1.5e6, k, PcmKind::PcmKappa, jtcn, global);
      add(spec, 1.5e6, k, PcmKind::PcmKappa, noma, global);
    }
    spec.eval_pcms = {PcmKind::PcmKappa};
    spec.averaging = Averaging::CommonFeasible;
  } else if (id == "fig7") {
    add(spec, 1.5e6, 0.5, PcmKind::PcmKappa, jtcn, global);
    add(spec, 1.5e6, 0.5, PcmKind::PcmKappa, noma, global);
    spec.eval_pcms = {PcmKind::PcmKappa};
    fp.per_user = true;
  } else if (id == "fig8") {
    for (double k : {0.0, 0.5, 2.5}) {
      add(spec, 1.5e6, k, PcmKind::PcmKappa, jtcn, global);
      add(spec, 1.5e6, k, PcmKind::PcmKappa, noma, global);
    }
    spec.eval_pcms = {PcmKind::PcmKappa};
    fp.per_user = true;
  } else {
    throw std::invalid_argument("unknown figure id '" + std::string(id) + "'");
  }
  return fp;
}

}  // namespace nomaee
