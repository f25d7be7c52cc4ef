#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nomaee/barrier.hpp"
#include "nomaee/channel.hpp"
#include "nomaee/config.hpp"
#include "nomaee/pcm.hpp"
#include "nomaee/rates.hpp"
#include "nomaee/surrogate.hpp"

namespace nomaee {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One Dinkelbach step, as written to the per-solve trace file.
struct TraceRow {
  int sca_iteration = 0;
  int dinkelbach_iteration = 0;
  double lambda = 0.0;           // parameter used for this subproblem (bits/J)
  double f_lambda = 0.0;         // F(lambda) = R~(q) - lambda P(q)
  double ee_true = 0.0;          // true-rate EE of the subproblem solution (optimizer PCM)
  double max_residual = 0.0;     // largest exact rate-constraint residual (log2 domain)
};

struct DinkelbachResult {
  Eigen::VectorXd q;
  double lambda = 0.0;  // R~(q)/P(q) at the returned point
  std::vector<double> lambda_trace;
  std::vector<double> f_trace;
  int iterations = 0;
  int inner_iterations = 0;
  bool converged = false;
};

/// Dinkelbach's method for max R~(q) / P(2^q) over the convex set built
/// from `coeffs`. q0 must be strictly feasible. `lambda0` defaults to 0.
DinkelbachResult dinkelbach(const SinrModel& model, const BoundCoeffs& coeffs, const AffinePower& power,
                            const Eigen::VectorXd& q0, const SolverSettings& settings, double lambda0 = 0.0,
                            std::vector<TraceRow>* trace = nullptr);

/// Minimum total radiated power meeting every rate requirement within the
/// per-BS budget (an LP in p). Empty when infeasible; throws SolverError
/// when the LP itself fails.
std::optional<Eigen::VectorXd> min_power_lp(const SinrModel& model);

std::optional<PowerAllocation> min_power_feasibility(ScenarioKind scenario, const CnrTable& cnr,
                                                     const NetworkConfig& cfg, int edge_bs = 0);

struct SolveOutcome {
  bool feasible = false;
  PowerAllocation allocation;
  Eigen::VectorXd rates;      // bits/s by user id
  double ee_opt = 0.0;        // true-rate EE under the optimizer's PCM
  double lambda_star = 0.0;   // final surrogate EE of the last Dinkelbach run
  int sca_iterations = 0;
  int dinkelbach_iterations = 0;
  int inner_iterations = 0;
  int ilo_rounds = 0;
  bool iteration_limit = false;
  bool interior_start_failed = false;  // no strictly feasible start: min-power point returned
  std::vector<double> lambda_trace;    // every Dinkelbach lambda, in order
  std::vector<double> ee_trace;        // true EE at the start and after each SCA iteration
  std::vector<TraceRow> trace;
};

/// Energy-efficiency maximization of a given SINR model (Alg. 1 loop):
/// min-power LP, interior start, then SCA over Dinkelbach subproblems.
SolveOutcome maximize_ee(const SinrModel& model, const AffinePower& power, const SolverSettings& settings);

/// Global optimization of the whole network under cfg.pcm_opt.
SolveOutcome solve_global(ScenarioKind scenario, const CnrTable& cnr, const NetworkConfig& cfg);

/// Iterative local optimization for conventional NOMA: the cell-edge user
/// joins its best BS, and each BS in turn optimizes its own cluster with
/// the others' powers held fixed.
SolveOutcome solve_ilo(const CnrTable& cnr, const NetworkConfig& cfg);

/// Checks rates >= R_min (1 - 1e-6) and per-BS power <= P_max (1 + 1e-9).
bool allocation_feasible(const SinrModel& model, const Eigen::VectorXd& p);

}  // namespace nomaee
