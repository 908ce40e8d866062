#include "ergoifc/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ergoifc/allocate.hpp"
#include "ergoifc/error.hpp"

namespace ergoifc {

std::string_view to_string(StateLabel label) {
  switch (label) {
    case StateLabel::Strong: return "Strong";
    case StateLabel::Weak: return "Weak";
    case StateLabel::Mixed: return "Mixed";
    case StateLabel::OneSidedStrong: return "OneSidedStrong";
    case StateLabel::OneSidedWeak: return "OneSidedWeak";
    case StateLabel::Degenerate: return "Degenerate";
  }
  return "?";
}

std::string_view to_string(Subclass subclass) {
  switch (subclass) {
    case Subclass::EVS: return "EVS";
    case Subclass::US: return "US";
    case Subclass::UW: return "UW";
    case Subclass::UM: return "UM";
    case Subclass::Hybrid: return "Hybrid";
    case Subclass::OneSidedEVS: return "OneSidedEVS";
    case Subclass::OneSidedUS: return "OneSidedUS";
    case Subclass::OneSidedUW: return "OneSidedUW";
    case Subclass::OneSidedHybrid: return "OneSidedHybrid";
  }
  return "?";
}

std::string_view to_string(Sidedness s) {
  switch (s) {
    case Sidedness::TwoSided: return "TwoSided";
    case Sidedness::OneSidedAtRx1: return "OneSidedAtRx1";
    case Sidedness::OneSidedAtRx2: return "OneSidedAtRx2";
  }
  return "?";
}

bool strong_at(const FadingState& s, int rx) {
  // Receiver 1 is hit by transmitter 2 through g12; compare with g22.
  return rx == 1 ? s.g12 >= s.g22 : s.g21 >= s.g11;
}

StateLabel classify_state(const FadingState& s) {
  const bool cross12 = s.g12 > 0.0;
  const bool cross21 = s.g21 > 0.0;
  if (!cross12 && !cross21) return StateLabel::Degenerate;
  if (!cross21) return strong_at(s, 1) ? StateLabel::OneSidedStrong : StateLabel::OneSidedWeak;
  if (!cross12) return strong_at(s, 2) ? StateLabel::OneSidedStrong : StateLabel::OneSidedWeak;
  const bool s1 = strong_at(s, 1);
  const bool s2 = strong_at(s, 2);
  if (s1 && s2) return StateLabel::Strong;
  if (!s1 && !s2) return StateLabel::Weak;
  return StateLabel::Mixed;
}

PowerPolicy direct_waterfilling_policy(const FadingProcess& process, const PowerBudget& budget) {
  PowerPolicy policy(process.size());
  for (int user = 1; user <= 2; ++user) {
    if (budget.of(user) == 0.0 || process.link_identically_zero(user, user)) continue;
    const auto link = process.link(user, user);
    const auto wf = waterfill(link, budget.of(user));
    for (std::size_t s = 0; s < process.size(); ++s) (user == 1 ? policy[s].p1 : policy[s].p2) = wf.power[s];
  }
  return policy;
}

Sidedness sidedness(const FadingProcess& process) {
  const bool no21 = process.link_identically_zero(2, 1);
  const bool no12 = process.link_identically_zero(1, 2);
  if (no21 && !no12) return Sidedness::OneSidedAtRx1;
  if (no12 && !no21) return Sidedness::OneSidedAtRx2;
  return Sidedness::TwoSided;
}

EvsCheck evs_condition(const FadingProcess& process, const PowerBudget& budget) {
  budget.validate();
  const PowerPolicy wf = direct_waterfilling_policy(process, budget);
  EvsCheck r;
  r.lhs = expect(process, wf, [](const FadingState& s, const StatePower& p) {
    return capacity(s.g11 * p.p1) + capacity(s.g22 * p.p2);
  });
  r.rhs = std::numeric_limits<double>::infinity();
  for (int rx = 1; rx <= 2; ++rx) {
    const int other = 3 - rx;
    if (process.link_identically_zero(rx, other)) continue;
    const double sum = expect(process, wf, [rx](const FadingState& s, const StatePower& p) {
      return capacity(s.gain(rx, 1) * p.p1 + s.gain(rx, 2) * p.p2);
    });
    r.rhs = std::min(r.rhs, sum);
  }
  r.holds = r.lhs < r.rhs;
  return r;
}

ClassificationReport classify_channel(const FadingProcess& process, const PowerBudget& budget) {
  ClassificationReport r;
  r.labels.reserve(process.size());
  for (const auto& s : process.states()) r.labels.push_back(classify_state(s));
  r.evs = evs_condition(process, budget);
  r.sidedness = sidedness(process);

  const auto states = process.states();
  if (r.sidedness != Sidedness::TwoSided) {
    const int rx = r.sidedness == Sidedness::OneSidedAtRx1 ? 1 : 2;
    if (r.evs.holds) {
      r.subclass = Subclass::OneSidedEVS;
    } else if (std::all_of(states.begin(), states.end(), [rx](const auto& s) { return strong_at(s, rx); })) {
      r.subclass = Subclass::OneSidedUS;
    } else if (std::all_of(states.begin(), states.end(), [rx](const auto& s) { return weak_at(s, rx); })) {
      r.subclass = Subclass::OneSidedUW;
    } else {
      r.subclass = Subclass::OneSidedHybrid;
    }
    return r;
  }

  auto all = [&](auto pred) { return std::all_of(states.begin(), states.end(), pred); };
  if (r.evs.holds) {
    r.subclass = Subclass::EVS;
  } else if (all([](const auto& s) { return strong_at(s, 1) && strong_at(s, 2); })) {
    r.subclass = Subclass::US;
  } else if (all([](const auto& s) { return weak_at(s, 1) && weak_at(s, 2); })) {
    r.subclass = Subclass::UW;
  } else if (all([](const auto& s) { return weak_at(s, 2) && strong_at(s, 1); }) ||
             all([](const auto& s) { return strong_at(s, 2) && weak_at(s, 1); })) {
    r.subclass = Subclass::UM;
  } else {
    r.subclass = Subclass::Hybrid;
  }
  return r;
}

NoisyInterferenceReport noisy_interference_condition(const FadingProcess& process, const PowerPolicy& policy) {
  if (policy.size() != process.size()) throw InvalidInput("policy length does not match state count");
  NoisyInterferenceReport r;
  r.holds = true;
  for (std::size_t i = 0; i < process.size(); ++i) {
    const auto& s = process.state(i);
    const double h11 = std::sqrt(s.g11);
    const double h12 = std::sqrt(s.g12);
    const double h21 = std::sqrt(s.g21);
    const double h22 = std::sqrt(s.g22);
    const double lhs = h11 * h12 * (1.0 + s.g21 * policy[i].p1) + h22 * h21 * (1.0 + s.g12 * policy[i].p2);
    const bool ok = lhs <= h11 * h22;
    r.per_state.push_back(ok);
    r.holds = r.holds && ok;
  }
  return r;
}

}  // namespace ergoifc
