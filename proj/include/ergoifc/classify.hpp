#pragma once

#include <string_view>
#include <vector>

#include "ergoifc/channel.hpp"

namespace ergoifc {

enum class StateLabel { Strong, Weak, Mixed, OneSidedStrong, OneSidedWeak, Degenerate };

enum class Subclass { EVS, US, UW, UM, Hybrid, OneSidedEVS, OneSidedUS, OneSidedUW, OneSidedHybrid };

/// Which receivers see interference.  OneSidedAtRx1 means g21 == 0 in every state.
enum class Sidedness { TwoSided, OneSidedAtRx1, OneSidedAtRx2 };

std::string_view to_string(StateLabel label);
std::string_view to_string(Subclass subclass);
std::string_view to_string(Sidedness sidedness);

/// Interference at receiver `rx` is strong: the cross gain reaching it is at
/// least the direct gain of that receiver.
bool strong_at(const FadingState& s, int rx);
/// Strictly weak counterpart of strong_at.
inline bool weak_at(const FadingState& s, int rx) { return !strong_at(s, rx); }

/// Strong iff g21 >= g11 and g12 >= g22; Weak iff both strictly smaller.
StateLabel classify_state(const FadingState& state);

struct EvsCheck {
  double lhs = 0.0;  ///< sum of interference-free waterfilling rates
  double rhs = 0.0;  ///< min over interfered receivers of the sum rate at that policy
  bool holds = false;
};

/// Interference-free waterfilling policy of both users on their direct links.
PowerPolicy direct_waterfilling_policy(const FadingProcess& process, const PowerBudget& budget);

/**
 * Fading-averaged very-strong condition evaluated at direct-link waterfilling.
 * Only receivers with a cross link that is not identically zero enter the
 * minimum; with no such receiver rhs is +inf.
 */
EvsCheck evs_condition(const FadingProcess& process, const PowerBudget& budget);

Sidedness sidedness(const FadingProcess& process);

struct ClassificationReport {
  std::vector<StateLabel> labels;
  Subclass subclass = Subclass::Hybrid;
  EvsCheck evs;
  Sidedness sidedness = Sidedness::TwoSided;
};

ClassificationReport classify_channel(const FadingProcess& process, const PowerBudget& budget);

struct NoisyInterferenceReport {
  std::vector<bool> per_state;
  bool holds = false;
};

/**
 * Per state: h11 h12 (1 + g21 P1) + h22 h21 (1 + g12 P2) <= h11 h22, with
 * amplitudes h = sqrt(g).
 */
NoisyInterferenceReport noisy_interference_condition(const FadingProcess& process, const PowerPolicy& policy);

}  // namespace ergoifc
