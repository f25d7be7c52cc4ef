#include <algorithm>
#include <cmath>

#include "nomaee/lp.hpp"
#include "nomaee/solver.hpp"

namespace nomaee {

std::optional<Eigen::VectorXd> min_power_lp(const SinrModel& model) {
  const int n = model.n_vars();
  std::vector<int> rows;
  for (int k = 0; k < model.n_terms(); ++k) {
    if (model.gamma_min(k) > 0.0) rows.push_back(k);
  }
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto nb = model.budget.rows();
  Eigen::MatrixXd A(r + nb, n);
  Eigen::VectorXd b(r + nb);
  // S p - gamma (I p + noise) >= 0, written as <= for the simplex.
  for (Eigen::Index i = 0; i < r; ++i) {
    const int k = rows[i];
    A.row(i) = -(model.signal.row(k) - model.gamma_min(k) * model.interference.row(k));
    b(i) = -model.gamma_min(k) * model.noise(k);
  }
  A.bottomRows(nb) = model.budget;
  b.tail(nb).setConstant(model.p_max);

  const LpResult lp = solve_lp(A, b, Eigen::VectorXd::Ones(n));
  switch (lp.status) {
    case LpStatus::Optimal: return lp.x;
    case LpStatus::Infeasible: return std::nullopt;
    case LpStatus::Unbounded: throw SolverError("min-power LP reported an unbounded objective");
    case LpStatus::IterationLimit: break;
  }
  throw SolverError("min-power LP hit its iteration limit");
}

std::optional<PowerAllocation> min_power_feasibility(ScenarioKind scenario, const CnrTable& cnr,
                                                     const NetworkConfig& cfg, int edge_bs) {
  ClusterLayout layout = cluster_layout(cnr, cfg, scenario, edge_bs);
  auto p = min_power_lp(build_sinr_model(layout, cnr, cfg));
  if (!p) return std::nullopt;
  return PowerAllocation{std::move(layout), std::move(*p)};
}

bool allocation_feasible(const SinrModel& model, const Eigen::VectorXd& p) {
  if ((p.array() < 0.0).any()) return false;
  const Eigen::VectorXd r = model.rates(p);
  const Eigen::VectorXd need = model.min_rates();
  if (((r - need * (1.0 - 1e-6)).array() < 0.0).any()) return false;
  return ((model.budget * p).array() <= model.p_max * (1.0 + 1e-9)).all();
}

namespace {

// Interior start from the min-power point: fill exact zeros, then scale
// up by at most 5% within every BS budget.
Eigen::VectorXd interior_start(const SinrModel& model, const Eigen::VectorXd& p_min) {
  const double floor = 1e-12 * model.p_max;
  Eigen::VectorXd p = p_min.cwiseMax(floor);
  const double load = (model.budget * p).maxCoeff();
  const double mu = std::min(1.05, model.p_max / load);
  if (mu > 1.0) p *= mu;
  return p.array().log2().matrix();
}

double true_ee(const SinrModel& model, const AffinePower& power, const Eigen::VectorXd& p) {
  return model.rates(p).sum() / power(p);
}

}  // namespace

SolveOutcome maximize_ee(const SinrModel& model, const AffinePower& power, const SolverSettings& settings) {
  SolveOutcome out;
  auto p_min = min_power_lp(model);
  if (!p_min) return out;
  out.feasible = true;

  Eigen::VectorXd q = interior_start(model, *p_min);
  BoundCoeffs coeffs = linearize(model, q);
  {
    Eigen::VectorXd candidate = q;
    if (!find_strictly_feasible(convex_constraints(model, coeffs), candidate)) {
      out.interior_start_failed = true;
      out.allocation.watts = *p_min;
      out.rates = model.rates(*p_min);
      out.ee_opt = true_ee(model, power, *p_min);
      out.ee_trace.push_back(out.ee_opt);
      return out;
    }
    if (candidate != q) {
      q = candidate;
      coeffs = linearize(model, q);
    }
  }

  Eigen::VectorXd p = exp2(q);
  double ee = true_ee(model, power, p);
  out.ee_trace.push_back(ee);
  for (int l = 1; l <= settings.l_max; ++l) {
    // The surrogate is tight at q, so its ratio there equals the true EE;
    // Dinkelbach starts from that value.
    if (!(max_constraint(convex_constraints(model, coeffs), q) < 0.0)) {
      Eigen::VectorXd candidate = q;
      if (!find_strictly_feasible(convex_constraints(model, coeffs), candidate)) break;
      q = candidate;
      p = exp2(q);
    }
    const double lambda0 = tilde_rates(model, coeffs, q).sum() / power(p);
    std::vector<TraceRow> rows;
    DinkelbachResult dk = dinkelbach(model, coeffs, power, q, settings, lambda0, &rows);
    for (auto& row : rows) row.sca_iteration = l;
    out.trace.insert(out.trace.end(), rows.begin(), rows.end());
    out.lambda_trace.insert(out.lambda_trace.end(), dk.lambda_trace.begin(), dk.lambda_trace.end());
    out.dinkelbach_iterations += dk.iterations;
    out.inner_iterations += dk.inner_iterations;
    out.iteration_limit = out.iteration_limit || !dk.converged;
    out.lambda_star = dk.lambda;
    out.sca_iterations = l;

    q = dk.q;
    p = exp2(q);
    const double next = true_ee(model, power, p);
    out.ee_trace.push_back(next);
    const bool done = std::abs(next - ee) <= settings.epsilon_sca * std::abs(ee);
    ee = next;
    if (done) break;
    if (l == settings.l_max) out.iteration_limit = true;
    coeffs = linearize(model, q);
  }

  out.allocation.watts = p;
  out.rates = model.rates(p);
  out.ee_opt = ee;
  return out;
}

SolveOutcome solve_global(ScenarioKind scenario, const CnrTable& cnr, const NetworkConfig& cfg) {
  ClusterLayout layout = cluster_layout(cnr, cfg, scenario, 0);
  const SinrModel model = build_sinr_model(layout, cnr, cfg);
  SolveOutcome out = maximize_ee(model, affine_pcm(cfg.pcm_opt, layout, cfg), cfg.solver);
  out.allocation.layout = std::move(layout);
  if (out.feasible) out.rates = rates_by_user(model, out.allocation.watts, cnr.n_users());
  return out;
}

}  // namespace nomaee
