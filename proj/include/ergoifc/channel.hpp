#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace ergoifc {

/// Shannon capacity C(x) = log2(1 + x) in bits.
double capacity(double snr);

/**
 * One fading state (sub-channel) described by its four link power gains.
 *
 * g_jk is the gain from transmitter k to receiver j, i.e. |H_jk|^2 with
 * unit-variance noise at both receivers.
 */
struct FadingState {
  double g11 = 0.0;
  double g12 = 0.0;
  double g21 = 0.0;
  double g22 = 0.0;

  /// Gain from transmitter `tx` to receiver `rx` (both 1-based).
  [[nodiscard]] double gain(int rx, int tx) const;

  /// Throws InvalidInput unless all four gains are finite and nonnegative.
  void validate() const;

  friend bool operator==(const FadingState&, const FadingState&) = default;
};

/// Average transmit power constraints of the two users.
struct PowerBudget {
  double p1 = 0.0;
  double p2 = 0.0;

  [[nodiscard]] double of(int user) const { return user == 1 ? p1 : p2; }
  void validate() const;
};

/// Transmit powers of both users in one fading state.
struct StatePower {
  double p1 = 0.0;
  double p2 = 0.0;

  [[nodiscard]] double of(int user) const { return user == 1 ? p1 : p2; }
  friend bool operator==(const StatePower&, const StatePower&) = default;
};

/// Per-state transmit powers, indexed like the states of a FadingProcess.
using PowerPolicy = std::vector<StatePower>;

/**
 * A finite, weighted collection of fading states: the discrete law of the
 * ergodic fading process.  Immutable once constructed.
 */
class FadingProcess {
 public:
  /// Builds a process; probabilities must be positive and sum to 1 within 1e-6.
  FadingProcess(std::vector<FadingState> states, std::vector<double> probs);

  [[nodiscard]] std::size_t size() const { return states_.size(); }
  [[nodiscard]] const FadingState& state(std::size_t i) const { return states_[i]; }
  [[nodiscard]] double prob(std::size_t i) const { return probs_[i]; }
  [[nodiscard]] std::span<const FadingState> states() const { return states_; }
  [[nodiscard]] std::span<const double> probs() const { return probs_; }

  /// (gain, probability) pairs of one link, in state order.
  [[nodiscard]] std::vector<std::pair<double, double>> link(int rx, int tx) const;

  /// True when the given cross link is zero in every state.
  [[nodiscard]] bool link_identically_zero(int rx, int tx) const;

 private:
  std::vector<FadingState> states_;
  std::vector<double> probs_;
};

/// Builds a process from (state, probability) pairs, preserving order; no renormalization.
FadingProcess make_discrete_channel(const std::vector<std::pair<FadingState, double>>& states);

/**
 * Monte Carlo discretization of i.i.d. Rayleigh cross links.
 *
 * Cross power gains g12, g21 are exponential with mean `sigma2`; direct gains
 * are fixed.  The generator is a seeded mt19937_64 with inverse-CDF sampling,
 * so a given seed reproduces the same process bit for bit.
 */
FadingProcess sample_rayleigh_channel(double sigma2, std::pair<double, double> direct_gains,
                                      std::size_t n_samples, std::uint64_t seed);

/// Sum over states of prob * f(state).
double expect(const FadingProcess& process, const std::function<double(const FadingState&)>& f);

/// Sum over states of prob * f(state, power) for a policy.
double expect(const FadingProcess& process, const PowerPolicy& policy,
              const std::function<double(const FadingState&, const StatePower&)>& f);

/// Average power spent by `user` (1 or 2) under `policy`.
double average_power(const FadingProcess& process, const PowerPolicy& policy, int user);

inline constexpr double kPowerTolerance = 1e-9;

struct FeasibilityReport {
  double avg_p1 = 0.0;
  double avg_p2 = 0.0;
  bool user1_ok = false;
  bool user2_ok = false;
  bool has_negative = false;

  [[nodiscard]] bool feasible() const { return user1_ok && user2_ok && !has_negative; }
};

/// Checks E[P_k] <= budget_k + 1e-9 and nonnegativity; throws on shape mismatch.
FeasibilityReport validate_policy(const FadingProcess& process, const PowerPolicy& policy,
                                  const PowerBudget& budget);

/// Policy with the same powers in every state.
PowerPolicy uniform_policy(const FadingProcess& process, const PowerBudget& budget);

}  // namespace ergoifc
