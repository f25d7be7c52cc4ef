#include "nomaee/channel.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>

namespace nomaee {

namespace {

// Decorrelates the placement and fading streams that share one seed.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t kPlacementStream = 0x706c6163656d656eULL;
constexpr std::uint64_t kFadingStream = 0x666164696e670000ULL;

double circumradius(const NetworkConfig& cfg) {
  if (cfg.n_bs == 1) return 0.0;
  if (cfg.n_bs == 2) return cfg.inter_bs_distance / 2.0;
  return cfg.inter_bs_distance / (2.0 * std::sin(std::numbers::pi / cfg.n_bs));
}

}  // namespace

Eigen::Matrix2Xd bs_sites(const NetworkConfig& cfg) {
  Eigen::Matrix2Xd sites(2, cfg.n_bs);
  if (cfg.n_bs == 1) {
    sites.setZero();
  } else if (cfg.n_bs == 2) {
    sites << 0.0, cfg.inter_bs_distance, 0.0, 0.0;
  } else {
    const double rc = circumradius(cfg);
    for (int b = 0; b < cfg.n_bs; ++b) {
      const double phi = std::numbers::pi + 2.0 * std::numbers::pi * b / cfg.n_bs;
      sites.col(b) << rc * std::cos(phi), rc * std::sin(phi);
    }
  }
  return sites;
}

Placement place_users(const ValidatedConfig& vcfg, std::uint64_t seed) {
  const NetworkConfig& cfg = *vcfg;
  const double radius = cfg.cell_radius;
  const double rc = circumradius(cfg);
  // The BSs sit on a circle of radius rc, so the coverage discs share a
  // point iff rc <= radius; the intersection then lies inside the disc of
  // radius sqrt(radius^2 - rc^2) around the centroid.
  if (rc > radius * (1.0 + 1e-12)) {
    throw ConfigError("inter_bs_distance", "coverage areas of the base stations do not intersect");
  }

  Placement pl;
  pl.bs_positions = bs_sites(cfg);
  const Eigen::Vector2d centroid = pl.bs_positions.rowwise().mean();
  const int per_bs = cfg.users_per_cluster - 1;
  const int n_users = cfg.users_total();
  pl.user_positions.resize(2, n_users);
  pl.home_bs.assign(n_users, -1);

  std::mt19937_64 rng(splitmix64(seed ^ kPlacementStream));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (int b = 0; b < cfg.n_bs; ++b) {
    for (int k = 0; k < per_bs; ++k) {
      const int u = b * per_bs + k;
      const double phi = 2.0 * std::numbers::pi * unit(rng);
      const double d = cfg.non_comp_distances[k];
      pl.user_positions.col(u) = pl.bs_positions.col(b) + d * Eigen::Vector2d(std::cos(phi), std::sin(phi));
      pl.home_bs[u] = b;
    }
  }

  const double lens = std::sqrt(std::max(0.0, radius * radius - rc * rc));
  Eigen::Vector2d edge = centroid;
  if (lens > 1e-9 * radius) {
    for (;;) {
      const double r = lens * std::sqrt(unit(rng));
      const double phi = 2.0 * std::numbers::pi * unit(rng);
      Eigen::Vector2d cand = centroid + r * Eigen::Vector2d(std::cos(phi), std::sin(phi));
      const double worst = (pl.bs_positions.colwise() - cand).colwise().norm().maxCoeff();
      if (worst <= radius) {
        edge = cand;
        break;
      }
    }
  }
  pl.user_positions.col(cfg.edge_user()) = edge;

  pl.distance.resize(n_users, cfg.n_bs);
  for (int u = 0; u < n_users; ++u) {
    for (int b = 0; b < cfg.n_bs; ++b) {
      pl.distance(u, b) = (pl.user_positions.col(u) - pl.bs_positions.col(b)).norm();
    }
  }
  return pl;
}

ChannelDraw draw_channel(const Placement& placement, std::uint64_t seed, Fading fading) {
  ChannelDraw draw;
  draw.seed = seed;
  draw.gain = placement.distance.unaryExpr([](double d) { return path_loss_linear(d); });
  if (fading == Fading::Rayleigh) {
    std::mt19937_64 rng(splitmix64(seed ^ kFadingStream));
    std::exponential_distribution<double> power(1.0);
    for (Eigen::Index u = 0; u < draw.gain.rows(); ++u) {
      for (Eigen::Index b = 0; b < draw.gain.cols(); ++b) draw.gain(u, b) *= power(rng);
    }
  }
  return draw;
}

CnrTable cnr_table(const ChannelDraw& draw, const NetworkConfig& cfg) {
  CnrTable t;
  t.cnr = draw.gain / (cfg.bandwidth_b * cfg.n0);
  t.edge_user = cfg.edge_user();
  const int per_bs = cfg.users_per_cluster - 1;
  t.sic_order.resize(cfg.n_bs);
  for (int b = 0; b < cfg.n_bs; ++b) {
    std::vector<int>& order = t.sic_order[b];
    order.resize(per_bs);
    std::iota(order.begin(), order.end(), b * per_bs);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return t.cnr(x, b) > t.cnr(y, b); });
    order.push_back(t.edge_user);
  }
  return t;
}

CnrTable sample_cnr(const ValidatedConfig& cfg, std::uint64_t seed, Fading fading) {
  return cnr_table(draw_channel(place_users(cfg, seed), seed, fading), *cfg);
}

int best_serving_bs(const CnrTable& cnr) {
  Eigen::Index best = 0;
  cnr.cnr.row(cnr.edge_user).maxCoeff(&best);
  return static_cast<int>(best);
}

void write_cnr_csv(std::ostream& out, const CnrTable& cnr, const Placement& placement) {
  out << "user,bs,serving_bs,cnr_per_watt\n";
  const auto old = out.precision(17);
  for (int u = 0; u < cnr.n_users(); ++u) {
    for (int b = 0; b < cnr.n_bs(); ++b) {
      out << u << ',' << b << ',' << placement.home_bs[u] << ',' << cnr.cnr(u, b) << '\n';
    }
  }
  out.precision(old);
}

}  // namespace nomaee
