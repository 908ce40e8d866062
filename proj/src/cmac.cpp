#include "ergoifc/cmac.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "ergoifc/classify.hpp"
#include "ergoifc/error.hpp"
#include "ergoifc/rate_function.hpp"

namespace ergoifc::cmac {

std::string_view to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::C1: return "C1";
    case CaseLabel::C2: return "C2";
    case CaseLabel::C3a: return "C3a";
    case CaseLabel::C3b: return "C3b";
    case CaseLabel::C3c: return "C3c";
    case CaseLabel::B1_3a: return "B1_3a";
    case CaseLabel::B1_3b: return "B1_3b";
    case CaseLabel::B1_3c: return "B1_3c";
    case CaseLabel::B2_3a: return "B2_3a";
    case CaseLabel::B2_3b: return "B2_3b";
    case CaseLabel::B2_3c: return "B2_3c";
  }
  return "?";
}

MacPentagon mac_bounds(const FadingProcess& process, const PowerPolicy& policy, int receiver) {
  if (receiver != 1 && receiver != 2) throw InvalidInput("receiver must be 1 or 2");
  MacPentagon m;
  m.r1_cap = expect(process, policy, [receiver](const FadingState& s, const StatePower& p) {
    return capacity(s.gain(receiver, 1) * p.p1);
  });
  m.r2_cap = expect(process, policy, [receiver](const FadingState& s, const StatePower& p) {
    return capacity(s.gain(receiver, 2) * p.p2);
  });
  m.sum_cap = expect(process, policy, [receiver](const FadingState& s, const StatePower& p) {
    return capacity(s.gain(receiver, 1) * p.p1 + s.gain(receiver, 2) * p.p2);
  });
  return m;
}

namespace {

struct PolytopeCaps {
  double a = 0.0;   // min over receivers of the user-1 cap
  double b = 0.0;   // min over receivers of the user-2 cap
  double cs = 0.0;  // min over receivers of the sum cap
};

PolytopeCaps polytope(const FadingProcess& process, const PowerPolicy& policy) {
  const auto m1 = mac_bounds(process, policy, 1);
  const auto m2 = mac_bounds(process, policy, 2);
  return {std::min(m1.r1_cap, m2.r1_cap), std::min(m1.r2_cap, m2.r2_cap), std::min(m1.sum_cap, m2.sum_cap)};
}

}  // namespace

double sum_rate_fixed_policy(const FadingProcess& process, const PowerPolicy& policy) {
  const auto c = polytope(process, policy);
  return std::min(c.cs, c.a + c.b);
}

CaseSums case_sum_rates(const FadingProcess& process, const PowerPolicy& policy) {
  const auto m1 = mac_bounds(process, policy, 1);
  const auto m2 = mac_bounds(process, policy, 2);
  return {m1.r1_cap + m2.r2_cap, m2.r1_cap + m1.r2_cap, m2.sum_cap, m1.sum_cap};
}

std::optional<CaseLabel> match_case(const CaseSums& s, double tol) {
  auto lt = [tol](double a, double b) { return a < b - tol; };
  auto eq = [tol](double a, double b) { return std::abs(a - b) <= tol; };
  const double m3 = std::min(s.s3a, s.s3b);
  if (lt(s.s1, m3)) return CaseLabel::C1;
  if (lt(s.s2, m3)) return CaseLabel::C2;
  if (lt(s.s3a, std::min({s.s3b, s.s1, s.s2}))) return CaseLabel::C3a;
  if (lt(s.s3b, std::min({s.s3a, s.s1, s.s2}))) return CaseLabel::C3b;
  if (eq(s.s3a, s.s3b) && lt(std::max(s.s3a, s.s3b), std::min(s.s1, s.s2))) return CaseLabel::C3c;
  if (eq(s.s1, s.s3a) && lt(s.s3a, s.s3b) && lt(s.s1, s.s3b)) return CaseLabel::B1_3a;
  if (eq(s.s2, s.s3a) && lt(s.s3a, s.s3b) && lt(s.s2, s.s3b)) return CaseLabel::B2_3a;
  if (eq(s.s1, s.s3b) && lt(s.s3b, s.s3a) && lt(s.s1, s.s3a)) return CaseLabel::B1_3b;
  if (eq(s.s2, s.s3b) && lt(s.s3b, s.s3a) && lt(s.s2, s.s3a)) return CaseLabel::B2_3b;
  if (eq(s.s3a, s.s3b) && eq(s.s1, s.s3a) && eq(s.s1, s.s3b) && lt(s.s1, s.s2)) return CaseLabel::B1_3c;
  if (eq(s.s3a, s.s3b) && eq(s.s2, s.s3a) && eq(s.s2, s.s3b) && lt(s.s2, s.s1)) return CaseLabel::B2_3c;
  return std::nullopt;
}

CaseLabel identify_case(const FadingProcess& process, const PowerPolicy& policy, double tol) {
  const auto label = match_case(case_sum_rates(process, policy), tol);
  if (!label) throw ConvergenceFailure("no case conditions hold at this policy (numerical degeneracy)");
  return *label;
}

namespace {

PowerPolicy cross_waterfilling_policy(const FadingProcess& process, const PowerBudget& budget) {
  PowerPolicy policy(process.size());
  // User k waterfills on its link to the unintended receiver.
  for (int user = 1; user <= 2; ++user) {
    const int rx = 3 - user;
    if (budget.of(user) == 0.0 || process.link_identically_zero(rx, user)) continue;
    const auto wf = waterfill(process.link(rx, user), budget.of(user));
    for (std::size_t s = 0; s < process.size(); ++s) (user == 1 ? policy[s].p1 : policy[s].p2) = wf.power[s];
  }
  return policy;
}

PowerPolicy max_min_policy(const FadingProcess& process, const PowerBudget& budget,
                           std::vector<RateFunction> functions) {
  EpigraphProblem pb;
  pb.process = &process;
  pb.budget = budget;
  pb.groups.push_back({1.0, std::move(functions)});
  return to_policy(solve_epigraph(pb).x);
}

}  // namespace

SumCapacityResult sum_capacity(const FadingProcess& process, const PowerBudget& budget, const CaseFilter& allowed) {
  budget.validate();
  const RateFunction s1 = rates::direct_sum(process);
  const RateFunction s2 = rates::cross_sum(process);
  const RateFunction s3a = rates::receiver_sum(process, 2);
  const RateFunction s3b = rates::receiver_sum(process, 1);

  auto permitted = [&](CaseLabel c) {
    return allowed.empty() || std::find(allowed.begin(), allowed.end(), c) != allowed.end();
  };
  auto mac_policy = [&](int rx) -> PowerPolicy {
    if (process.link_identically_zero(rx, 1) && process.link_identically_zero(rx, 2)) {
      return PowerPolicy(process.size());
    }
    return mac_opportunistic_waterfill(process, rx, budget).policy;
  };

  struct Candidate {
    CaseLabel label;
    PowerPolicy policy;
  };
  // Link (rx, tx) pairs through which each of s1, s2, s3a, s3b sees each user.
  enum Sum { kS1, kS2, kS3a, kS3b };
  const std::array<std::array<std::pair<int, int>, 2>, 4> links = {{
      {{{1, 1}, {2, 2}}},
      {{{2, 1}, {1, 2}}},
      {{{2, 1}, {2, 2}}},
      {{{1, 1}, {1, 2}}},
  }};
  const PowerPolicy wf = direct_waterfilling_policy(process, budget);
  // A user that none of the case's bounds can see is free; giving it its
  // direct waterfilling powers leaves the case objective unchanged and lifts
  // the remaining bounds away from spurious ties.
  auto settle = [&](PowerPolicy pol, std::initializer_list<Sum> used) {
    for (int user = 1; user <= 2; ++user) {
      bool seen = false;
      for (Sum u : used) {
        const auto [rx, tx] = links[u][user - 1];
        seen = seen || !process.link_identically_zero(rx, tx);
      }
      if (seen) continue;
      for (std::size_t i = 0; i < pol.size(); ++i) (user == 1 ? pol[i].p1 : pol[i].p2) = wf[i].of(user);
    }
    return pol;
  };
  // Candidates are produced lazily in taxonomy order.
  const std::vector<std::pair<CaseLabel, std::function<PowerPolicy()>>> search = {
      {CaseLabel::C1, [&] { return wf; }},
      {CaseLabel::C2, [&] { return settle(cross_waterfilling_policy(process, budget), {kS2}); }},
      {CaseLabel::C3a, [&] { return settle(mac_policy(2), {kS3a}); }},
      {CaseLabel::C3b, [&] { return settle(mac_policy(1), {kS3b}); }},
      {CaseLabel::C3c, [&] { return settle(max_min_policy(process, budget, {s3a, s3b}), {kS3a, kS3b}); }},
      {CaseLabel::B1_3a, [&] { return settle(max_min_policy(process, budget, {s1, s3a}), {kS1, kS3a}); }},
      {CaseLabel::B2_3a, [&] { return settle(max_min_policy(process, budget, {s2, s3a}), {kS2, kS3a}); }},
      {CaseLabel::B1_3b, [&] { return settle(max_min_policy(process, budget, {s1, s3b}), {kS1, kS3b}); }},
      {CaseLabel::B2_3b, [&] { return settle(max_min_policy(process, budget, {s2, s3b}), {kS2, kS3b}); }},
      {CaseLabel::B1_3c, [&] { return settle(max_min_policy(process, budget, {s1, s3a, s3b}), {kS1, kS3a, kS3b}); }},
      {CaseLabel::B2_3c, [&] { return settle(max_min_policy(process, budget, {s2, s3a, s3b}), {kS2, kS3a, kS3b}); }},
  };

  std::vector<Candidate> computed;
  std::optional<Candidate> accepted;
  // Solver outputs meet equalities to ~1e-10; retry once with a looser band
  // before giving up.
  for (double tol : {kCaseTolerance, 1e-6}) {
    for (std::size_t k = 0; k < search.size() && !accepted; ++k) {
      const auto& [label, optimize] = search[k];
      if (!permitted(label)) continue;
      if (computed.size() <= k) {
        while (computed.size() < k) computed.push_back({search[computed.size()].first, {}});
        computed.push_back({label, optimize()});
      } else if (computed[k].policy.empty()) {
        computed[k].policy = optimize();
      }
      const auto match = match_case(case_sum_rates(process, computed[k].policy), tol);
      if (match && *match == label) accepted = computed[k];
    }
    if (accepted) break;
  }
  if (!accepted) throw ConvergenceFailure("no case optimizer satisfied its own case conditions");

  SumCapacityResult r;
  r.policy = accepted->policy;
  r.label = accepted->label;
  r.value = sum_rate_fixed_policy(process, r.policy);
  const auto direct = maximize_min_concave(process, {s1, s2, s3a, s3b}, budget, 1e-6);
  r.cross_check = direct.value;
  if (std::abs(r.value - r.cross_check) > 1e-3) {
    throw ConvergenceFailure("case algorithm (" + std::to_string(r.value) + ") disagrees with direct maximization (" +
                             std::to_string(r.cross_check) + ")");
  }
  return r;
}

WeightedRates weighted_max_fixed_policy(const FadingProcess& process, const PowerPolicy& policy,
                                        const WeightPair& w) {
  if (!(w.mu1 > 0.0) || !(w.mu2 > 0.0)) throw InvalidInput("weights must be positive");
  const auto c = polytope(process, policy);
  WeightedRates r;
  if (w.mu1 <= w.mu2) {
    r.r2 = std::min(c.b, c.cs);
    r.r1 = std::min(c.a, c.cs - r.r2);
  } else {
    r.r1 = std::min(c.a, c.cs);
    r.r2 = std::min(c.b, c.cs - r.r1);
  }
  r.value = w.mu1 * r.r1 + w.mu2 * r.r2;
  return r;
}

std::vector<BoundaryPoint> region_boundary(const FadingProcess& process, const PowerBudget& budget,
                                           const std::vector<WeightPair>& weight_grid) {
  if (weight_grid.empty()) throw InvalidInput("weight grid is empty");
  std::vector<WeightPair> grid = weight_grid;
  std::stable_sort(grid.begin(), grid.end(),
                   [](const WeightPair& a, const WeightPair& b) { return a.mu1 * b.mu2 < b.mu1 * a.mu2; });
  std::vector<BoundaryPoint> out;
  out.reserve(grid.size());
  for (const auto& w : grid) {
    if (!(w.mu1 > 0.0) || !(w.mu2 > 0.0)) throw InvalidInput("weights must be positive");
    // Weighted LP value over the polytope as a min of concave supporting functions.
    std::vector<RateFunction> fs;
    for (int i = 1; i <= 2; ++i) {
      for (int j = 1; j <= 2; ++j) {
        fs.push_back(w.mu1 * rates::single_user(process, i, 1) + w.mu2 * rates::single_user(process, j, 2));
        if (w.mu1 <= w.mu2) {
          fs.push_back(w.mu1 * rates::receiver_sum(process, i) + (w.mu2 - w.mu1) * rates::single_user(process, j, 2));
        } else {
          fs.push_back(w.mu2 * rates::receiver_sum(process, i) + (w.mu1 - w.mu2) * rates::single_user(process, j, 1));
        }
      }
    }
    const auto report = maximize_min_concave(process, fs, budget, 1e-6);
    if (!report.converged) {
      throw ConvergenceFailure("weighted-rate maximization did not converge (kkt residual " +
                               std::to_string(report.kkt_residual) + ")");
    }
    const auto rates = weighted_max_fixed_policy(process, report.policy, w);
    out.push_back({w, rates.r1, rates.r2, report.policy});
  }
  return out;
}

}  // namespace ergoifc::cmac
