#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "ergoifc/allocate.hpp"
#include "ergoifc/channel.hpp"

namespace ergoifc::cmac {

/// Fading-averaged rate caps at one receiver for a fixed policy.
struct MacPentagon {
  double r1_cap = 0.0;
  double r2_cap = 0.0;
  double sum_cap = 0.0;
};

enum class CaseLabel { C1, C2, C3a, C3b, C3c, B1_3a, B1_3b, B1_3c, B2_3a, B2_3b, B2_3c };

std::string_view to_string(CaseLabel label);

struct WeightPair {
  double mu1 = 1.0;
  double mu2 = 1.0;
};

MacPentagon mac_bounds(const FadingProcess& process, const PowerPolicy& policy, int receiver);

/// Exact max of R1 + R2 over the intersection of both receivers' pentagons.
double sum_rate_fixed_policy(const FadingProcess& process, const PowerPolicy& policy);

/**
 * The four sum-rate expressions that define the case taxonomy:
 * s1 both users on direct links, s2 both on cross links,
 * s3a the receiver-2 sum cap, s3b the receiver-1 sum cap.
 */
struct CaseSums {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3a = 0.0;
  double s3b = 0.0;
};

CaseSums case_sum_rates(const FadingProcess& process, const PowerPolicy& policy);

inline constexpr double kCaseTolerance = 1e-9;

/// First label whose conditions hold, in taxonomy order; nullopt if none.
std::optional<CaseLabel> match_case(const CaseSums& sums, double tol = kCaseTolerance);

/// Throws ConvergenceFailure when no label matches.
CaseLabel identify_case(const FadingProcess& process, const PowerPolicy& policy, double tol = kCaseTolerance);

struct SumCapacityResult {
  double value = 0.0;
  PowerPolicy policy;
  CaseLabel label = CaseLabel::C1;
  /// Value of the direct max-min cross-check.
  double cross_check = 0.0;
};

/// Which cases the ordered search may accept (default: all eleven).
using CaseFilter = std::vector<CaseLabel>;

/**
 * Ordered case algorithm: optimize each case in taxonomy order and accept the
 * first whose optimum satisfies its own conditions.  The result is compared
 * with a direct maximization of sum_rate_fixed_policy; a gap above 1e-3 bits
 * raises ConvergenceFailure.
 */
SumCapacityResult sum_capacity(const FadingProcess& process, const PowerBudget& budget,
                               const CaseFilter& allowed = {});

struct WeightedRates {
  double r1 = 0.0;
  double r2 = 0.0;
  double value = 0.0;
};

WeightedRates weighted_max_fixed_policy(const FadingProcess& process, const PowerPolicy& policy,
                                        const WeightPair& weights);

struct BoundaryPoint {
  WeightPair mu;
  double r1 = 0.0;
  double r2 = 0.0;
  PowerPolicy policy;
};

/// Boundary samples ordered by increasing mu1 / mu2 (so R1 nondecreasing).
std::vector<BoundaryPoint> region_boundary(const FadingProcess& process, const PowerBudget& budget,
                                           const std::vector<WeightPair>& weight_grid);

}  // namespace ergoifc::cmac
