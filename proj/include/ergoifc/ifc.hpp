#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "ergoifc/channel.hpp"
#include "ergoifc/classify.hpp"

namespace ergoifc {

/// Value and maximizing policy of a sum-rate optimization.
struct SchemeResult {
  double value = 0.0;
  PowerPolicy policy;
  /// Projected-gradient KKT residual of the stated objective (0 when not applicable).
  double kkt_residual = 0.0;
};

/// Sum of the interference-free waterfilling rates of both users.
double interference_free_outer_bound(const FadingProcess& process, const PowerBudget& budget);

struct EvsResult {
  double value = 0.0;
  PowerPolicy policy;
  /// Sides of the rectangular capacity region.
  double r1 = 0.0;
  double r2 = 0.0;
};

/// Throws PreconditionFailed when the very-strong condition fails.
EvsResult evs_sum_capacity(const FadingProcess& process, const PowerBudget& budget);

/**
 * Uniformly strong sum-capacity:
 * max over policies of min( min_j E[C(g_j1 P1 + g_j2 P2)], sum_k E[C(g_kk P_k)] ).
 * On a one-sided channel only the interfered receiver enters the inner min.
 * Throws PreconditionFailed unless every state is strong.
 */
SchemeResult us_sum_capacity(const FadingProcess& process, const PowerBudget& budget);

/// Same bound with the min taken inside the expectation (independent coding per state).
SchemeResult us_separable_sum_rate(const FadingProcess& process, const PowerBudget& budget);

/// The separable objective evaluated at a fixed policy.
double us_separable_rate_at(const FadingProcess& process, const PowerPolicy& policy);

/**
 * One-sided uniformly weak sum-capacity: the interfered user treats
 * interference as noise.  `side`, if given, must match the channel.
 * Throws PreconditionFailed on a two-sided channel or a state that is strong
 * at the interfered receiver.
 */
SchemeResult uw1_sum_capacity(const FadingProcess& process, const PowerBudget& budget,
                              std::optional<Sidedness> side = std::nullopt);

/**
 * Uniformly mixed sum-capacity: with receiver 1 strong and receiver 2 weak in
 * every state, max min( E[C(g11 P1 + g12 P2)], S^(w,2) ); mirrored otherwise.
 */
SchemeResult um_sum_capacity(const FadingProcess& process, const PowerBudget& budget);

/// Two-sided uniformly weak bound max min(S^(w,1), S^(w,2)).
SchemeResult uw2_upper_bound(const FadingProcess& process, const PowerBudget& budget);

/// Per-state powers and private-power fraction of user 2 under rate splitting.
struct HkAllocation {
  PowerPolicy policy;
  std::vector<double> alpha;

  /// Private power alpha * P2 in state s.
  [[nodiscard]] double private_power(std::size_t s) const { return alpha[s] * policy[s].p2; }
  /// Throws InvalidInput on a shape mismatch or alpha outside [0, 1].
  void validate(std::size_t n_states) const;
};

enum class MinimaxCase { Case1_S1smaller, Case2_S2smaller, Case3_equal };

std::string_view to_string(MinimaxCase c);

struct HkSumRates {
  double s1 = 0.0;
  double s2 = 0.0;
};

/**
 * The two sum-rate bounds of rate splitting on a channel with g21 = 0:
 * s1 = E[C(g11 P1 / (1 + g12 q))] + E[C(g22 P2)]
 * s2 = E[C(g22 q)] + E[C((g11 P1 + g12 (P2 - q)) / (1 + g12 q))]
 * with q = alpha P2.
 */
HkSumRates hk_sum_rates(const FadingProcess& process, const HkAllocation& allocation);

struct HkRegionBounds {
  double r1_cap = 0.0;
  double r2_cap_direct = 0.0;
  double r2_cap_split = 0.0;
  double sum_cap = 0.0;

  /// min(r1 + min(r2 caps), sum_cap): largest sum rate in the region.
  [[nodiscard]] double max_sum_rate() const;
};

HkRegionBounds hk_region_bounds(const FadingProcess& process, const HkAllocation& allocation);

struct HkResult {
  double value = 0.0;
  HkAllocation allocation;
  MinimaxCase minimax_case = MinimaxCase::Case3_equal;
  HkSumRates rates;
};

/// Tolerance used to label the minimax case at the optimum.
inline constexpr double kMinimaxTolerance = 1e-6;

/**
 * Maximizes min(s1, s2) over policies and private fractions, with alpha = 0
 * forced in states where g12 >= g22.
 */
HkResult hk_optimize(const FadingProcess& process, const PowerBudget& budget);

struct SeparableResult {
  double value = 0.0;
  HkAllocation allocation;
};

/**
 * Independent per-state coding on a channel with g21 = 0: alpha = 1 in weak
 * states, 0 in strong ones, maximizing E[min(s1_h, s2_h)].
 */
SeparableResult separable_one_sided_baseline(const FadingProcess& process, const PowerBudget& budget);

/// Time-division baseline: each user alone half the time at twice its power.
double tdm_baseline(const FadingProcess& process, const PowerBudget& budget);

}  // namespace ergoifc
