#include "ergoifc/channel.hpp"

#include <cmath>
#include <random>
#include <string>

#include "ergoifc/error.hpp"

namespace ergoifc {

double capacity(double snr) { return std::log2(1.0 + snr); }

double FadingState::gain(int rx, int tx) const {
  if (rx == 1) return tx == 1 ? g11 : g12;
  return tx == 1 ? g21 : g22;
}

void FadingState::validate() const {
  for (double g : {g11, g12, g21, g22}) {
    if (!std::isfinite(g) || g < 0.0) {
      throw InvalidInput("fading gains must be finite and nonnegative, got " + std::to_string(g));
    }
  }
}

void PowerBudget::validate() const {
  // Zero budgets are allowed: a silent user is a legitimate corner of the model.
  for (double p : {p1, p2}) {
    if (!std::isfinite(p) || p < 0.0) {
      throw InvalidInput("power budgets must be finite and nonnegative, got " + std::to_string(p));
    }
  }
}

FadingProcess::FadingProcess(std::vector<FadingState> states, std::vector<double> probs)
    : states_(std::move(states)), probs_(std::move(probs)) {
  if (states_.empty()) throw InvalidInput("a fading process needs at least one state");
  if (states_.size() != probs_.size()) {
    throw InvalidInput("state and probability lists differ in length");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < states_.size(); ++i) {
    states_[i].validate();
    if (!std::isfinite(probs_[i]) || probs_[i] <= 0.0) {
      throw InvalidInput("state probabilities must be positive, got " + std::to_string(probs_[i]));
    }
    total += probs_[i];
  }
  if (std::abs(total - 1.0) > 1e-6) {
    throw InvalidInput("probabilities sum to " + std::to_string(total));
  }
  for (double& p : probs_) p /= total;
}

std::vector<std::pair<double, double>> FadingProcess::link(int rx, int tx) const {
  std::vector<std::pair<double, double>> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.emplace_back(states_[i].gain(rx, tx), probs_[i]);
  return out;
}

bool FadingProcess::link_identically_zero(int rx, int tx) const {
  for (const auto& s : states_) {
    if (s.gain(rx, tx) != 0.0) return false;
  }
  return true;
}

FadingProcess make_discrete_channel(const std::vector<std::pair<FadingState, double>>& states) {
  std::vector<FadingState> s;
  std::vector<double> p;
  s.reserve(states.size());
  p.reserve(states.size());
  for (const auto& [state, prob] : states) {
    s.push_back(state);
    p.push_back(prob);
  }
  return FadingProcess(std::move(s), std::move(p));
}

FadingProcess sample_rayleigh_channel(double sigma2, std::pair<double, double> direct_gains,
                                      std::size_t n_samples, std::uint64_t seed) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw InvalidInput("sigma2 must be positive");
  if (n_samples == 0) throw InvalidInput("n_samples must be at least 1");
  std::mt19937_64 rng(seed);
  // 53-bit uniform in [0, 1); inverse CDF of the exponential law.
  auto draw = [&] {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return -sigma2 * std::log1p(-u);
  };
  std::vector<FadingState> states;
  states.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    FadingState s;
    s.g11 = direct_gains.first;
    s.g22 = direct_gains.second;
    s.g12 = draw();
    s.g21 = draw();
    states.push_back(s);
  }
  std::vector<double> probs(n_samples, 1.0 / static_cast<double>(n_samples));
  return FadingProcess(std::move(states), std::move(probs));
}

double expect(const FadingProcess& process, const std::function<double(const FadingState&)>& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < process.size(); ++i) acc += process.prob(i) * f(process.state(i));
  return acc;
}

double expect(const FadingProcess& process, const PowerPolicy& policy,
              const std::function<double(const FadingState&, const StatePower&)>& f) {
  if (policy.size() != process.size()) throw InvalidInput("policy length does not match state count");
  double acc = 0.0;
  for (std::size_t i = 0; i < process.size(); ++i) {
    acc += process.prob(i) * f(process.state(i), policy[i]);
  }
  return acc;
}

double average_power(const FadingProcess& process, const PowerPolicy& policy, int user) {
  return expect(process, policy, [user](const FadingState&, const StatePower& p) { return p.of(user); });
}

FeasibilityReport validate_policy(const FadingProcess& process, const PowerPolicy& policy,
                                  const PowerBudget& budget) {
  if (policy.size() != process.size()) {
    throw InvalidInput("policy has " + std::to_string(policy.size()) + " entries, process has " +
                       std::to_string(process.size()) + " states");
  }
  FeasibilityReport r;
  for (const auto& p : policy) {
    if (p.p1 < 0.0 || p.p2 < 0.0 || !std::isfinite(p.p1) || !std::isfinite(p.p2)) r.has_negative = true;
  }
  r.avg_p1 = average_power(process, policy, 1);
  r.avg_p2 = average_power(process, policy, 2);
  r.user1_ok = r.avg_p1 <= budget.p1 + kPowerTolerance;
  r.user2_ok = r.avg_p2 <= budget.p2 + kPowerTolerance;
  return r;
}

PowerPolicy uniform_policy(const FadingProcess& process, const PowerBudget& budget) {
  return PowerPolicy(process.size(), StatePower{budget.p1, budget.p2});
}

}  // namespace ergoifc
