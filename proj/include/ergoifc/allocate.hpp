#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ergoifc/channel.hpp"
#include "ergoifc/rate_function.hpp"

namespace ergoifc {

/// Single-user waterfilling over a discrete gain distribution.
struct WaterfillResult {
  std::vector<double> power;  ///< per-state power, same order as the input
  double water_level = 0.0;
  double achieved_rate = 0.0;  ///< E[C(g P(g))] in bits
};

/**
 * P(g) = (nu - 1/g)^+ with nu set by bisection so that E[P] = budget.
 * States with g = 0 get no power.  Throws InvalidInput if every gain is 0.
 */
WaterfillResult waterfill(std::span<const std::pair<double, double>> gain_dist, double budget);

struct OptimizerReport {
  PowerPolicy policy;
  double value = 0.0;
  int iterations = 0;
  double kkt_residual = 0.0;
  bool converged = false;
};

/**
 * Maximizes E[C(g_j1 P1 + g_j2 P2)] at receiver j under both average power
 * constraints.
 *
 * The optimum is opportunistic: with multipliers (l1, l2) a state goes to the
 * user with the larger g_jk / l_k, which waterfills on it.  Sorting states by
 * g_j2 / g_j1 turns the search over multipliers into a finite enumeration of
 * split points, plus one candidate per ratio group in which the group is shared
 * (multiplier tie).  Shared groups are split in the single proportion that
 * meets both budgets.
 */
OptimizerReport mac_opportunistic_waterfill(const FadingProcess& process, int receiver,
                                            const PowerBudget& budget);

/**
 * Projected-gradient stationarity violation of `objective` at `policy`, plus
 * the complementary-slackness violation of the two power constraints.
 *
 * Projection is in the probability-weighted norm, onto
 * {P_k >= 0, E[P_k] <= budget_k}, with unit step.
 */
double kkt_residual(const FadingProcess& process, const PowerPolicy& policy, const RateFunction& objective,
                    const PowerBudget& budget);

/// Log-barrier interior-point settings.
struct BarrierOptions {
  double mu_initial = 0.1;
  double mu_final = 1e-12;
  double mu_factor = 0.1;
  int max_newton_per_stage = 200;
};

/**
 * maximize sum_g cost_g * min_i f_{g,i}(x)
 * over per-state powers (and optionally private powers 0 <= q <= P2),
 * subject to E[P_k] <= budget_k.
 *
 * One group with one cost is a plain max-min; one group per state with the
 * state probability as cost is an expectation of per-state minima.
 */
struct EpigraphProblem {
  struct Group {
    double cost = 1.0;
    std::vector<RateFunction> functions;
  };

  const FadingProcess* process = nullptr;
  PowerBudget budget;
  std::vector<Group> groups;
  bool with_private_power = false;
  /// States whose private power is pinned to zero (only with_private_power).
  std::vector<bool> private_pinned_zero;
};

struct EpigraphSolution {
  Decision x;
  double value = 0.0;
  /// Barrier estimates of the multipliers of f_{g,i} >= t_g, taken at mu = 1e-9.
  std::vector<std::vector<double>> duals;
  int newton_iterations = 0;
  bool converged = false;
};

/**
 * Primal log-barrier Newton method on the epigraph form.  Globally optimal for
 * concave functions; for non-concave ones (Hessian shifted until the Newton
 * system is definite) it returns a local maximizer near `start`.
 */
EpigraphSolution solve_epigraph(const EpigraphProblem& problem, const Decision* start = nullptr,
                                const BarrierOptions& options = {});

/**
 * Maximizes min_i objectives_i(P) over feasible policies.  Every objective must
 * be concave.  `kkt_residual` of the report is the stationarity residual of the
 * dual-weighted combination plus the epigraph slackness; converged means it is
 * at most `tol`.
 */
OptimizerReport maximize_min_concave(const FadingProcess& process, const std::vector<RateFunction>& objectives,
                                     const PowerBudget& budget, double tol);

}  // namespace ergoifc
