#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "nomaee/rates.hpp"
#include "support.hpp"

using namespace nomaee;
using nomaee::fixtures::table_from_cnr;
using nomaee::fixtures::unit_config;

namespace {

PowerAllocation alloc(const ClusterLayout& layout, std::initializer_list<double> w) {
  PowerAllocation p;
  p.layout = layout;
  p.watts = Eigen::VectorXd(static_cast<Eigen::Index>(w.size()));
  int k = 0;
  for (double x : w) p.watts(k++) = x;
  return p;
}

}  // namespace

TEST(Sinr, SingleUser) {
  const NetworkConfig cfg = unit_config(1, 1);
  const CnrTable t = table_from_cnr(Eigen::MatrixXd::Ones(1, 1), cfg);
  const auto layout = cluster_layout(t, cfg, ScenarioKind::ConventionalNoma);
  EXPECT_DOUBLE_EQ(sinr_noma(0, 0, alloc(layout, {1.0}), t, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(sinr_noma(0, 0, alloc(layout, {0.0}), t, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(rate_noma(alloc(layout, {1.0}), t, cfg)(0), 1.0);
}

TEST(Sinr, TwoUsersOneCell) {
  NetworkConfig cfg = unit_config(1, 2);
  Eigen::MatrixXd h(2, 1);
  h << 5.0, 1.0;
  const CnrTable t = table_from_cnr(h, cfg);
  const auto layout = cluster_layout(t, cfg, ScenarioKind::ConventionalNoma);
  const PowerAllocation p = alloc(layout, {1.0, 3.0});
  EXPECT_DOUBLE_EQ(sinr_noma(1, 0, p, t, 1.0), 1.5);
  EXPECT_DOUBLE_EQ(sinr_noma(0, 0, p, t, 1.0), 5.0);

  cfg.bandwidth_b = 180e3;
  cfg.n0 = 1.0 / 180e3;
  cfg.omega = 100.0;
  // omega enters the noise term, so scale the gains to keep SINR = 1.5
  const CnrTable t100 = table_from_cnr(h * 100.0, cfg);
  const Eigen::VectorXd r = rate_noma(alloc(cluster_layout(t100, cfg, ScenarioKind::ConventionalNoma), {1, 3}),
                                      t100, cfg);
  EXPECT_NEAR(r(1), 100.0 * 180000.0 * std::log2(2.5), 1e-6);
  EXPECT_NEAR(r(1), 2.3795e7, 1e3);
}

TEST(Rate, UnitSinr) {
  NetworkConfig cfg = unit_config(1, 1);
  cfg.bandwidth_b = 180e3;
  cfg.n0 = 1.0 / 180e3;
  const CnrTable t = table_from_cnr(Eigen::MatrixXd::Ones(1, 1), cfg);
  const auto layout = cluster_layout(t, cfg, ScenarioKind::ConventionalNoma);
  EXPECT_NEAR(rate_noma(alloc(layout, {1.0}), t, cfg)(0), 180000.0, 1e-6);
  EXPECT_EQ(rate_noma(alloc(layout, {0.0}), t, cfg)(0), 0.0);
}

TEST(Rate, JtcnCompUser) {
  const NetworkConfig cfg = unit_config(2, 1);
  const CnrTable t = table_from_cnr(Eigen::MatrixXd::Ones(1, 2), cfg);
  const auto layout = cluster_layout(t, cfg, ScenarioKind::Jtcn);
  ASSERT_EQ(layout.n_vars(), 2);
  EXPECT_NEAR(rate_jtcn(alloc(layout, {1.0, 1.0}), t, cfg)(0), std::log2(3.0), 1e-15);
  EXPECT_NEAR(rate_jtcn(alloc(layout, {1.0, 0.0}), t, cfg)(0), 1.0, 1e-15);
  EXPECT_THROW(rate_noma(alloc(layout, {1.0, 1.0}), t, cfg), std::invalid_argument);
}

TEST(Rate, ZeroAllocation) {
  const NetworkConfig cfg = table_one_config();
  const CnrTable t = sample_cnr(validate_config(cfg), 4);
  for (auto s : {ScenarioKind::ConventionalNoma, ScenarioKind::Jtcn}) {
    PowerAllocation p;
    p.layout = cluster_layout(t, cfg, s);
    p.watts = Eigen::VectorXd::Zero(p.layout.n_vars());
    const Eigen::VectorXd r = s == ScenarioKind::Jtcn ? rate_jtcn(p, t, cfg) : rate_noma(p, t, cfg);
    EXPECT_TRUE((r.array() == 0).all());
  }
}

TEST(Rate, ModelMatchesHandSinrNoma) {
  const NetworkConfig cfg = table_one_config();
  const auto vcfg = validate_config(cfg);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const CnrTable t = sample_cnr(vcfg, seed);
    PowerAllocation p;
    p.layout = cluster_layout(t, cfg, ScenarioKind::ConventionalNoma);
    p.watts = Eigen::VectorXd::NullaryExpr(p.layout.n_vars(), [&] { return u(rng); });
    const Eigen::VectorXd r = rate_noma(p, t, cfg);
    for (int b = 0; b < p.layout.n_bs(); ++b) {
      for (std::size_t k = 0; k < p.layout.members[b].size(); ++k) {
        const double g = sinr_noma(static_cast<int>(k), b, p, t, cfg.omega);
        EXPECT_NEAR(r(p.layout.members[b][k]) / (cfg.omega * cfg.bandwidth_b * std::log2(1 + g)), 1.0, 1e-12);
      }
    }
  }
}

TEST(Rate, JtcnWithZeroJointPowerIsNoma) {
  const NetworkConfig cfg = table_one_config();
  const auto vcfg = validate_config(cfg);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const CnrTable t = sample_cnr(vcfg, seed);
    PowerAllocation n, j;
    n.layout = cluster_layout(t, cfg, ScenarioKind::ConventionalNoma, 0);
    j.layout = cluster_layout(t, cfg, ScenarioKind::Jtcn);
    n.watts = Eigen::VectorXd::NullaryExpr(n.layout.n_vars(), [&] { return u(rng); });
    j.watts = Eigen::VectorXd::Zero(j.layout.n_vars());
    for (int b = 0; b < n.layout.n_bs(); ++b)
      for (std::size_t k = 0; k < n.layout.members[b].size(); ++k)
        j.watts(j.layout.var(b, static_cast<int>(k))) = n.at(b, static_cast<int>(k));
    const Eigen::VectorXd rn = rate_noma(n, t, cfg), rj = rate_jtcn(j, t, cfg);
    for (int k = 0; k < rn.size(); ++k) EXPECT_NEAR(rj(k), rn(k), 1e-12 * std::max(1.0, rn(k)));
  }
}

TEST(Rate, Monotonicity) {
  const NetworkConfig cfg = table_one_config();
  const auto vcfg = validate_config(cfg);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.01, 5.0);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const CnrTable t = sample_cnr(vcfg, seed);
    for (auto s : {ScenarioKind::ConventionalNoma, ScenarioKind::Jtcn}) {
      const SinrModel m = build_sinr_model(cluster_layout(t, cfg, s), t, cfg);
      const Eigen::VectorXd p = Eigen::VectorXd::NullaryExpr(m.n_vars(), [&] { return u(rng); });
      const Eigen::VectorXd r0 = m.rates(p);
      for (int v = 0; v < m.n_vars(); ++v) {
        Eigen::VectorXd q = p;
        q(v) *= 1.5;
        const Eigen::VectorXd r1 = m.rates(q);
        for (int k = 0; k < m.n_terms(); ++k) {
          if (m.signal(k, v) > 0) EXPECT_GE(r1(k), r0(k));
          else EXPECT_LE(r1(k), r0(k));
        }
      }
    }
  }
}

TEST(Rate, OmegaScaling) {
  NetworkConfig cfg = table_one_config();
  const CnrTable t = sample_cnr(validate_config(cfg), 2);
  const auto layout = cluster_layout(t, cfg, ScenarioKind::Jtcn);
  const Eigen::VectorXd p = Eigen::VectorXd::Constant(layout.n_vars(), 1.0);
  const Eigen::VectorXd r1 = build_sinr_model(layout, t, cfg).rates(p);
  cfg.omega *= 2.0;
  const Eigen::VectorXd r2 = build_sinr_model(layout, t, cfg).rates(p);
  EXPECT_TRUE((r2.array() >= r1.array()).all());
}

TEST(Layout, Shapes) {
  const NetworkConfig cfg = table_one_config();
  const CnrTable t = sample_cnr(validate_config(cfg), 3);
  const auto jt = cluster_layout(t, cfg, ScenarioKind::Jtcn);
  EXPECT_EQ(jt.n_vars(), 6);
  EXPECT_TRUE(jt.is_comp(4));
  EXPECT_EQ(jt.user_of(jt.var(1, 2)), 4);
  const auto no = cluster_layout(t, cfg, ScenarioKind::ConventionalNoma, 1);
  EXPECT_EQ(no.n_vars(), 5);
  EXPECT_EQ(no.members[0].size(), 2u);
  EXPECT_EQ(no.members[1].back(), 4);
  EXPECT_FALSE(no.is_comp(4));
  EXPECT_THROW(cluster_layout(t, cfg, ScenarioKind::ConventionalNoma, 2), std::out_of_range);
}

TEST(Rate, RestrictToBs) {
  const NetworkConfig cfg = table_one_config();
  const CnrTable t = sample_cnr(validate_config(cfg), 3);
  const auto layout = cluster_layout(t, cfg, ScenarioKind::ConventionalNoma, 0);
  const SinrModel full = build_sinr_model(layout, t, cfg);
  const Eigen::VectorXd p = Eigen::VectorXd::LinSpaced(5, 0.5, 3.0);
  for (int b = 0; b < 2; ++b) {
    const SinrModel local = restrict_to_bs(full, layout, b, p);
    const Eigen::VectorXd mine = p.segment(layout.offset[b], layout.members[b].size());
    const Eigen::VectorXd rl = local.rates(mine), rf = full.rates(p);
    for (int k = 0; k < local.n_terms(); ++k) {
      const int u = local.term_user[k];
      const auto it = std::find(full.term_user.begin(), full.term_user.end(), u);
      EXPECT_NEAR(rl(k) / rf(it - full.term_user.begin()), 1.0, 1e-12);
    }
  }
  const auto jt = cluster_layout(t, cfg, ScenarioKind::Jtcn);
  EXPECT_THROW(restrict_to_bs(build_sinr_model(jt, t, cfg), jt, 0, Eigen::VectorXd::Ones(6)), std::invalid_argument);
}

TEST(DecodingCount, Values) {
  static_assert(decoding_count(1, 3) == 3);
  EXPECT_EQ(decoding_count(1, 3), 3);
  EXPECT_EQ(decoding_count(3, 3), 1);
  EXPECT_EQ(decoding_count(2, 3), 2);
  EXPECT_THROW(decoding_count(0, 3), std::out_of_range);
  EXPECT_THROW(decoding_count(4, 3), std::out_of_range);
}
