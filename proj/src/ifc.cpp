#include "ergoifc/ifc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ergoifc/allocate.hpp"
#include "ergoifc/cmac.hpp"
#include "ergoifc/error.hpp"
#include "ergoifc/rate_function.hpp"

namespace ergoifc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Receivers whose incoming cross link is not identically zero.
std::vector<int> interfered_receivers(const FadingProcess& process) {
  std::vector<int> out;
  for (int rx = 1; rx <= 2; ++rx) {
    if (!process.link_identically_zero(rx, 3 - rx)) out.push_back(rx);
  }
  return out;
}

void require_g21_zero(const FadingProcess& process) {
  if (!process.link_identically_zero(2, 1)) {
    throw PreconditionFailed("rate splitting needs a one-sided channel with g21 = 0 in every state");
  }
}

bool strong_state_one_sided(const FadingState& s) { return s.g12 >= s.g22; }

double objective_value(const EpigraphProblem& pb, const Decision& x) {
  double v = 0.0;
  for (const auto& g : pb.groups) {
    double m = kInf;
    for (const auto& f : g.functions) m = std::min(m, f.value(x));
    v += g.cost * m;
  }
  return v;
}

bool private_free(const EpigraphProblem& pb, std::size_t s) {
  return pb.with_private_power && pb.budget.p2 > 0.0 && (pb.private_pinned_zero.empty() || !pb.private_pinned_zero[s]);
}

/**
 * Grid over allocations that exhaust both budgets.  Coordinates are the first
 * n-1 budget shares of each user with positive budget (the last share is the
 * remainder) followed by one private fraction per free state.
 */
class BudgetGrid {
 public:
  explicit BudgetGrid(const EpigraphProblem& pb) : pb_(pb), n_(pb.process->size()) {
    for (int u = 1; u <= 2; ++u) {
      if (pb.budget.of(u) > 0.0) users_.push_back(u);
    }
    for (std::size_t s = 0; s < n_; ++s) {
      if (private_free(pb, s)) alpha_states_.push_back(s);
    }
    dim_ = users_.size() * (n_ - 1) + alpha_states_.size();
  }

  [[nodiscard]] std::size_t dim() const { return dim_; }

  /// Empty decision when the coordinates leave the simplex.
  [[nodiscard]] Decision decode(const std::vector<double>& c) const {
    Decision x(kVarsPerState * n_, 0.0);
    std::size_t k = 0;
    for (int u : users_) {
      double used = 0.0;
      for (std::size_t s = 0; s + 1 < n_; ++s) {
        const double w = c[k++];
        used += w;
        x[kVarsPerState * s + (u - 1)] = w * pb_.budget.of(u) / pb_.process->prob(s);
      }
      const double last = 1.0 - used;
      if (last < -1e-12) return {};
      x[kVarsPerState * (n_ - 1) + (u - 1)] = std::max(last, 0.0) * pb_.budget.of(u) / pb_.process->prob(n_ - 1);
    }
    for (std::size_t s : alpha_states_) x[kVarsPerState * s + 2] = c[k++] * x[kVarsPerState * s + 1];
    return x;
  }

  /// Best point of the product grid with the given per-axis ranges.
  void scan(const std::vector<double>& lo, const std::vector<double>& hi, double step, std::vector<double>& best_c,
            double& best_v) const {
    std::vector<int> counts(dim_);
    for (std::size_t d = 0; d < dim_; ++d) counts[d] = static_cast<int>(std::floor((hi[d] - lo[d]) / step + 1e-9)) + 1;
    std::vector<int> idx(dim_, 0);
    std::vector<double> c(dim_);
    while (true) {
      for (std::size_t d = 0; d < dim_; ++d) c[d] = std::min(lo[d] + idx[d] * step, hi[d]);
      const Decision x = decode(c);
      if (!x.empty()) {
        const double v = objective_value(pb_, x);
        if (v > best_v) {
          best_v = v;
          best_c = c;
        }
      }
      std::size_t d = 0;
      for (; d < dim_; ++d) {
        if (++idx[d] < counts[d]) break;
        idx[d] = 0;
      }
      if (d == dim_) break;
    }
  }

 private:
  const EpigraphProblem& pb_;
  std::size_t n_;
  std::vector<int> users_;
  std::vector<std::size_t> alpha_states_;
  std::size_t dim_ = 0;
};

constexpr std::size_t kMaxGridDim = 4;

struct SearchResult {
  Decision x;
  double value = -kInf;
};

/// Decision with powers from `policy` and private fraction `alpha` in free states.
Decision start_point(const EpigraphProblem& pb, const PowerPolicy& policy, double alpha) {
  Decision x = to_decision(policy);
  for (std::size_t s = 0; s < policy.size(); ++s) {
    if (private_free(pb, s)) x[kVarsPerState * s + 2] = alpha * x[kVarsPerState * s + 1];
  }
  return x;
}

PowerPolicy mix_policy(const PowerPolicy& user1_from, const PowerPolicy& user2_from) {
  PowerPolicy p(user1_from.size());
  for (std::size_t s = 0; s < p.size(); ++s) p[s] = {user1_from[s].p1, user2_from[s].p2};
  return p;
}

/**
 * Best local maximizer over deterministic barrier starts (uniform, per-link
 * waterfilling, extreme private fractions), then, for small problems, a coarse
 * and a refined grid whose best point is polished by the barrier.  Ties keep
 * the earliest candidate.
 */
SearchResult solve_nonconcave(const EpigraphProblem& pb) {
  const auto& process = *pb.process;
  const PowerPolicy uni = uniform_policy(process, pb.budget);
  const PowerPolicy wf = direct_waterfilling_policy(process, pb.budget);
  std::vector<Decision> starts;
  const bool split = pb.with_private_power;
  for (double a : split ? std::vector<double>{1.0, 0.5, 0.0} : std::vector<double>{1.0}) {
    starts.push_back(start_point(pb, uni, a));
    starts.push_back(start_point(pb, wf, a));
  }
  starts.push_back(start_point(pb, mix_policy(wf, uni), 1.0));
  starts.push_back(start_point(pb, mix_policy(uni, wf), 1.0));

  SearchResult best;
  auto consider = [&best, &pb](const Decision& x) {
    const double v = objective_value(pb, x);
    if (v > best.value) {
      best.value = v;
      best.x = x;
    }
  };
  for (const auto& s : starts) consider(solve_epigraph(pb, &s).x);

  const BudgetGrid grid(pb);
  const std::size_t dim = grid.dim();
  if (dim >= 1 && dim <= kMaxGridDim) {
    std::vector<double> best_c;
    double best_v = -kInf;
    grid.scan(std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0), 0.1, best_c, best_v);
    if (!best_c.empty()) {
      std::vector<double> lo(dim), hi(dim);
      for (std::size_t d = 0; d < dim; ++d) {
        lo[d] = std::max(0.0, best_c[d] - 0.1);
        hi[d] = std::min(1.0, best_c[d] + 0.1);
      }
      grid.scan(lo, hi, 0.02, best_c, best_v);
      const Decision g = grid.decode(best_c);
      consider(g);
      consider(solve_epigraph(pb, &g).x);
    }
  }
  return best;
}

SchemeResult from_search(const SearchResult& r) {
  SchemeResult out;
  out.value = r.value;
  out.policy = to_policy(r.x);
  return out;
}

/// Single-group max-min problem without private power.
EpigraphProblem max_min_problem(const FadingProcess& process, const PowerBudget& budget,
                                std::vector<RateFunction> functions) {
  EpigraphProblem pb;
  pb.process = &process;
  pb.budget = budget;
  pb.groups.push_back({1.0, std::move(functions)});
  return pb;
}

RateFunction hk_s1(const FadingProcess& process) {
  RateFunction f;
  for (std::size_t s = 0; s < process.size(); ++s) {
    const auto& st = process.state(s);
    const double p = process.prob(s);
    f.add(s, p, {st.g11, 0.0, st.g12});
    f.add(s, -p, {0.0, 0.0, st.g12});
    f.add(s, p, {0.0, st.g22, 0.0});
  }
  return f;
}

RateFunction hk_s2(const FadingProcess& process) {
  RateFunction f;
  for (std::size_t s = 0; s < process.size(); ++s) {
    const auto& st = process.state(s);
    const double p = process.prob(s);
    f.add(s, p, {0.0, 0.0, st.g22});
    f.add(s, p, {st.g11, st.g12, 0.0});
    f.add(s, -p, {0.0, 0.0, st.g12});
  }
  return f;
}

double snap_unit(double a) {
  if (a < 1e-9) return 0.0;
  if (a > 1.0 - 1e-9) return 1.0;
  return a;
}

}  // namespace

double interference_free_outer_bound(const FadingProcess& process, const PowerBudget& budget) {
  budget.validate();
  double total = 0.0;
  for (int k = 1; k <= 2; ++k) {
    if (budget.of(k) == 0.0 || process.link_identically_zero(k, k)) continue;
    total += waterfill(process.link(k, k), budget.of(k)).achieved_rate;
  }
  return total;
}

EvsResult evs_sum_capacity(const FadingProcess& process, const PowerBudget& budget) {
  const auto check = evs_condition(process, budget);
  if (!check.holds) {
    throw PreconditionFailed("NotEVS: very strong condition fails (" + std::to_string(check.lhs) +
                             " >= " + std::to_string(check.rhs) + ")");
  }
  EvsResult r;
  r.policy = direct_waterfilling_policy(process, budget);
  r.r1 = rates::single_user(process, 1, 1).value(r.policy);
  r.r2 = rates::single_user(process, 2, 2).value(r.policy);
  r.value = r.r1 + r.r2;
  return r;
}

namespace {

void require_uniformly_strong(const FadingProcess& process) {
  const auto rxs = interfered_receivers(process);
  if (rxs.empty()) throw PreconditionFailed("NotUniformlyStrong: channel has no interference");
  for (std::size_t s = 0; s < process.size(); ++s) {
    for (int rx : rxs) {
      if (!strong_at(process.state(s), rx)) {
        throw PreconditionFailed("NotUniformlyStrong: state " + std::to_string(s) + " is weak at receiver " +
                                 std::to_string(rx));
      }
    }
  }
}

}  // namespace

SchemeResult us_sum_capacity(const FadingProcess& process, const PowerBudget& budget) {
  budget.validate();
  require_uniformly_strong(process);
  const auto rxs = interfered_receivers(process);
  SchemeResult r;
  if (rxs.size() == 2) {
    using cmac::CaseLabel;
    const cmac::CaseFilter allowed = {CaseLabel::C1,    CaseLabel::C3a,   CaseLabel::C3b,  CaseLabel::C3c,
                                      CaseLabel::B1_3a, CaseLabel::B1_3b, CaseLabel::B1_3c};
    const auto res = cmac::sum_capacity(process, budget, allowed);
    r.value = res.value;
    r.policy = res.policy;
    return r;
  }
  std::vector<RateFunction> fs = {rates::receiver_sum(process, rxs.front()), rates::direct_sum(process)};
  const auto rep = maximize_min_concave(process, fs, budget, 1e-6);
  r.value = rep.value;
  r.policy = rep.policy;
  r.kkt_residual = rep.kkt_residual;
  return r;
}

double us_separable_rate_at(const FadingProcess& process, const PowerPolicy& policy) {
  if (policy.size() != process.size()) throw InvalidInput("policy length does not match state count");
  const auto rxs = interfered_receivers(process);
  double total = 0.0;
  for (std::size_t s = 0; s < process.size(); ++s) {
    const auto& st = process.state(s);
    const auto& p = policy[s];
    double m = capacity(st.g11 * p.p1) + capacity(st.g22 * p.p2);
    for (int rx : rxs) m = std::min(m, capacity(st.gain(rx, 1) * p.p1 + st.gain(rx, 2) * p.p2));
    total += process.prob(s) * m;
  }
  return total;
}

SchemeResult us_separable_sum_rate(const FadingProcess& process, const PowerBudget& budget) {
  budget.validate();
  require_uniformly_strong(process);
  const auto rxs = interfered_receivers(process);
  EpigraphProblem pb;
  pb.process = &process;
  pb.budget = budget;
  for (std::size_t s = 0; s < process.size(); ++s) {
    const auto& st = process.state(s);
    EpigraphProblem::Group g;
    g.cost = process.prob(s);
    RateFunction direct;
    direct.add(s, 1.0, {st.g11, 0.0, 0.0}).add(s, 1.0, {0.0, st.g22, 0.0});
    g.functions.push_back(direct);
    for (int rx : rxs) g.functions.push_back(RateFunction().add(s, 1.0, {st.gain(rx, 1), st.gain(rx, 2), 0.0}));
    pb.groups.push_back(std::move(g));
  }
  const auto sol = solve_epigraph(pb);
  SchemeResult r;
  r.policy = to_policy(sol.x);
  r.value = us_separable_rate_at(process, r.policy);
  return r;
}

SchemeResult uw1_sum_capacity(const FadingProcess& process, const PowerBudget& budget,
                              std::optional<Sidedness> side) {
  budget.validate();
  const Sidedness actual = sidedness(process);
  if (actual == Sidedness::TwoSided) throw PreconditionFailed("uw1 needs a one-sided channel");
  if (side && *side != actual) throw PreconditionFailed("requested side does not match the channel");
  const int victim = actual == Sidedness::OneSidedAtRx1 ? 1 : 2;
  for (std::size_t s = 0; s < process.size(); ++s) {
    if (strong_at(process.state(s), victim)) {
      throw PreconditionFailed("NotUniformlyWeak: state " + std::to_string(s) + " is strong at receiver " +
                               std::to_string(victim));
    }
  }
  const RateFunction objective = rates::weak_sum(process, victim);
  auto r = from_search(solve_nonconcave(max_min_problem(process, budget, {objective})));
  r.kkt_residual = kkt_residual(process, r.policy, objective, budget);
  return r;
}

SchemeResult um_sum_capacity(const FadingProcess& process, const PowerBudget& budget) {
  budget.validate();
  const auto states = process.states();
  auto all = [&](auto pred) { return std::all_of(states.begin(), states.end(), pred); };
  int strong_rx = 0;
  if (all([](const FadingState& s) { return s.g11 > s.g21 && s.g12 >= s.g22; })) {
    strong_rx = 1;
  } else if (all([](const FadingState& s) { return s.g22 > s.g12 && s.g21 >= s.g11; })) {
    strong_rx = 2;
  } else {
    throw PreconditionFailed("NotUniformlyMixed: no state pattern with one strong and one weak receiver");
  }
  // The weak receiver belongs to the other user, who treats interference as noise.
  const int victim = 3 - strong_rx;
  const auto pb = max_min_problem(process, budget,
                                  {rates::receiver_sum(process, strong_rx), rates::weak_sum(process, victim)});
  return from_search(solve_nonconcave(pb));
}

SchemeResult uw2_upper_bound(const FadingProcess& process, const PowerBudget& budget) {
  budget.validate();
  for (std::size_t s = 0; s < process.size(); ++s) {
    const auto& st = process.state(s);
    if (!weak_at(st, 1) || !weak_at(st, 2)) {
      throw PreconditionFailed("NotUniformlyWeak: state " + std::to_string(s) + " is not weak at both receivers");
    }
  }
  const auto pb = max_min_problem(process, budget, {rates::weak_sum(process, 1), rates::weak_sum(process, 2)});
  return from_search(solve_nonconcave(pb));
}

void HkAllocation::validate(std::size_t n_states) const {
  if (policy.size() != n_states || alpha.size() != n_states) {
    throw InvalidInput("allocation length does not match state count");
  }
  for (double a : alpha) {
    if (!(a >= 0.0 && a <= 1.0)) throw InvalidInput("alpha must lie in [0, 1]");
  }
}

std::string_view to_string(MinimaxCase c) {
  switch (c) {
    case MinimaxCase::Case1_S1smaller: return "Case1_S1smaller";
    case MinimaxCase::Case2_S2smaller: return "Case2_S2smaller";
    case MinimaxCase::Case3_equal: return "Case3_equal";
  }
  return "?";
}

HkSumRates hk_sum_rates(const FadingProcess& process, const HkAllocation& allocation) {
  require_g21_zero(process);
  allocation.validate(process.size());
  HkSumRates r;
  double s1 = 0.0;
  double s2 = 0.0;
  for (std::size_t s = 0; s < process.size(); ++s) {
    const auto& st = process.state(s);
    const double p1 = allocation.policy[s].p1;
    const double p2 = allocation.policy[s].p2;
    const double q = allocation.private_power(s);
    const double noise = 1.0 + st.g12 * q;
    const double p = process.prob(s);
    s1 += p * (capacity(st.g11 * p1 / noise) + capacity(st.g22 * p2));
    s2 += p * (capacity(st.g22 * q) + capacity((st.g11 * p1 + st.g12 * (p2 - q)) / noise));
  }
  r.s1 = s1;
  r.s2 = s2;
  return r;
}

double HkRegionBounds::max_sum_rate() const { return std::min(r1_cap + std::min(r2_cap_direct, r2_cap_split), sum_cap); }

HkRegionBounds hk_region_bounds(const FadingProcess& process, const HkAllocation& allocation) {
  require_g21_zero(process);
  allocation.validate(process.size());
  HkRegionBounds b;
  for (std::size_t s = 0; s < process.size(); ++s) {
    const auto& st = process.state(s);
    const double p1 = allocation.policy[s].p1;
    const double p2 = allocation.policy[s].p2;
    const double q = allocation.private_power(s);
    const double noise = 1.0 + st.g12 * q;
    const double p = process.prob(s);
    b.r1_cap += p * capacity(st.g11 * p1 / noise);
    b.r2_cap_direct += p * capacity(st.g22 * p2);
    b.r2_cap_split += p * (capacity(st.g22 * q) + capacity(st.g12 * (p2 - q) / noise));
    b.sum_cap += p * (capacity(st.g22 * q) + capacity((st.g11 * p1 + st.g12 * (p2 - q)) / noise));
  }
  return b;
}

HkResult hk_optimize(const FadingProcess& process, const PowerBudget& budget) {
  budget.validate();
  require_g21_zero(process);
  EpigraphProblem pb = max_min_problem(process, budget, {hk_s1(process), hk_s2(process)});
  pb.with_private_power = true;
  pb.private_pinned_zero.resize(process.size());
  for (std::size_t s = 0; s < process.size(); ++s) pb.private_pinned_zero[s] = strong_state_one_sided(process.state(s));

  const auto best = solve_nonconcave(pb);
  if (!std::isfinite(best.value)) throw ConvergenceFailure("rate-splitting search produced no finite candidate");

  HkResult r;
  r.allocation.policy = to_policy(best.x);
  r.allocation.alpha.assign(process.size(), 0.0);
  for (std::size_t s = 0; s < process.size(); ++s) {
    const double p2 = best.x[kVarsPerState * s + 1];
    const double q = best.x[kVarsPerState * s + 2];
    if (!pb.private_pinned_zero[s] && p2 > 0.0) r.allocation.alpha[s] = snap_unit(std::clamp(q / p2, 0.0, 1.0));
  }
  r.rates = hk_sum_rates(process, r.allocation);
  r.value = std::min(r.rates.s1, r.rates.s2);
  if (std::abs(r.rates.s1 - r.rates.s2) <= kMinimaxTolerance) {
    r.minimax_case = MinimaxCase::Case3_equal;
  } else if (r.rates.s1 < r.rates.s2) {
    r.minimax_case = MinimaxCase::Case1_S1smaller;
  } else {
    r.minimax_case = MinimaxCase::Case2_S2smaller;
  }
  return r;
}

SeparableResult separable_one_sided_baseline(const FadingProcess& process, const PowerBudget& budget) {
  budget.validate();
  require_g21_zero(process);
  EpigraphProblem pb;
  pb.process = &process;
  pb.budget = budget;
  SeparableResult r;
  r.allocation.alpha.assign(process.size(), 0.0);
  for (std::size_t s = 0; s < process.size(); ++s) {
    const auto& st = process.state(s);
    EpigraphProblem::Group g;
    g.cost = process.prob(s);
    if (strong_state_one_sided(st)) {
      // alpha = 0: min(C(g11 P1) + C(g22 P2), C(g11 P1 + g12 P2)).
      g.functions.push_back(RateFunction().add(s, 1.0, {st.g11, 0.0, 0.0}).add(s, 1.0, {0.0, st.g22, 0.0}));
      g.functions.push_back(RateFunction().add(s, 1.0, {st.g11, st.g12, 0.0}));
    } else {
      // alpha = 1: both bounds coincide with treating interference as noise.
      r.allocation.alpha[s] = 1.0;
      g.functions.push_back(RateFunction()
                                .add(s, 1.0, {st.g11, st.g12, 0.0})
                                .add(s, -1.0, {0.0, st.g12, 0.0})
                                .add(s, 1.0, {0.0, st.g22, 0.0}));
    }
    pb.groups.push_back(std::move(g));
  }
  const auto best = solve_nonconcave(pb);
  r.allocation.policy = to_policy(best.x);
  r.value = best.value;
  return r;
}

double tdm_baseline(const FadingProcess& process, const PowerBudget& budget) {
  budget.validate();
  return 0.5 * expect(process, [&budget](const FadingState& s) {
           return capacity(s.g11 * 2.0 * budget.p1) + capacity(s.g22 * 2.0 * budget.p2);
         });
}

}  // namespace ergoifc
