#include "ergoifc/rate_function.hpp"

#include <cmath>
#include <numbers>

#include "ergoifc/error.hpp"

namespace ergoifc {

namespace {

constexpr double kInvLn2 = 1.0 / std::numbers::ln2;

double dot(const std::array<double, kVarsPerState>& a, std::span<const double> x, std::size_t s) {
  const double* xs = x.data() + kVarsPerState * s;
  return a[0] * xs[0] + a[1] * xs[1] + a[2] * xs[2];
}

}  // namespace

Decision to_decision(const PowerPolicy& policy) {
  Decision x(kVarsPerState * policy.size(), 0.0);
  for (std::size_t s = 0; s < policy.size(); ++s) {
    x[kVarsPerState * s] = policy[s].p1;
    x[kVarsPerState * s + 1] = policy[s].p2;
  }
  return x;
}

PowerPolicy to_policy(std::span<const double> x) {
  PowerPolicy policy(x.size() / kVarsPerState);
  for (std::size_t s = 0; s < policy.size(); ++s) {
    policy[s] = {x[kVarsPerState * s], x[kVarsPerState * s + 1]};
  }
  return policy;
}

RateFunction& RateFunction::add(std::size_t state, double weight, std::array<double, kVarsPerState> coef) {
  if (weight != 0.0) terms_.push_back({state, weight, coef});
  return *this;
}

RateFunction& RateFunction::add_constant(double c) {
  constant_ += c;
  return *this;
}

RateFunction& RateFunction::operator+=(const RateFunction& other) {
  constant_ += other.constant_;
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

RateFunction& RateFunction::operator*=(double scale) {
  constant_ *= scale;
  for (auto& t : terms_) t.weight *= scale;
  return *this;
}

RateFunction operator+(RateFunction a, const RateFunction& b) { return a += b; }
RateFunction operator*(double scale, RateFunction f) { return f *= scale; }

double RateFunction::value(std::span<const double> x) const {
  double acc = constant_;
  for (const auto& t : terms_) acc += t.weight * std::log2(1.0 + dot(t.coef, x, t.state));
  return acc;
}

void RateFunction::add_gradient(std::span<const double> x, double scale, std::span<double> grad) const {
  for (const auto& t : terms_) {
    const double d = scale * t.weight * kInvLn2 / (1.0 + dot(t.coef, x, t.state));
    for (std::size_t v = 0; v < kVarsPerState; ++v) grad[kVarsPerState * t.state + v] += d * t.coef[v];
  }
}

void RateFunction::add_hessian(std::span<const double> x, double scale, Eigen::MatrixXd& hess) const {
  for (const auto& t : terms_) {
    const double den = 1.0 + dot(t.coef, x, t.state);
    const double d = -scale * t.weight * kInvLn2 / (den * den);
    const std::size_t base = kVarsPerState * t.state;
    for (std::size_t a = 0; a < kVarsPerState; ++a) {
      if (t.coef[a] == 0.0) continue;
      for (std::size_t b = 0; b < kVarsPerState; ++b) {
        hess(static_cast<Eigen::Index>(base + a), static_cast<Eigen::Index>(base + b)) +=
            d * t.coef[a] * t.coef[b];
      }
    }
  }
}

bool RateFunction::is_concave() const {
  for (const auto& t : terms_) {
    if (t.weight < 0.0) return false;
  }
  return true;
}

double RateFunction::value(const PowerPolicy& policy) const { return value(to_decision(policy)); }

std::vector<StatePower> RateFunction::gradient(const PowerPolicy& policy) const {
  const Decision x = to_decision(policy);
  std::vector<double> g(x.size(), 0.0);
  add_gradient(x, 1.0, g);
  return to_policy(g);
}

namespace rates {

namespace {

std::array<double, kVarsPerState> coef_for(int tx, double g) {
  std::array<double, kVarsPerState> c{};
  c[tx == 1 ? 0 : 1] = g;
  return c;
}

void check_index(int i) {
  if (i != 1 && i != 2) throw InvalidInput("user/receiver index must be 1 or 2");
}

}  // namespace

RateFunction single_user(const FadingProcess& process, int rx, int tx) {
  check_index(rx);
  check_index(tx);
  RateFunction f;
  for (std::size_t s = 0; s < process.size(); ++s) {
    f.add(s, process.prob(s), coef_for(tx, process.state(s).gain(rx, tx)));
  }
  return f;
}

RateFunction receiver_sum(const FadingProcess& process, int rx) {
  check_index(rx);
  RateFunction f;
  for (std::size_t s = 0; s < process.size(); ++s) {
    const auto& st = process.state(s);
    f.add(s, process.prob(s), {st.gain(rx, 1), st.gain(rx, 2), 0.0});
  }
  return f;
}

RateFunction direct_sum(const FadingProcess& process) {
  return single_user(process, 1, 1) + single_user(process, 2, 2);
}

RateFunction cross_sum(const FadingProcess& process) {
  return single_user(process, 2, 1) + single_user(process, 1, 2);
}

RateFunction weak_sum(const FadingProcess& process, int victim) {
  check_index(victim);
  const int other = 3 - victim;
  RateFunction f;
  for (std::size_t s = 0; s < process.size(); ++s) {
    const auto& st = process.state(s);
    const double p = process.prob(s);
    std::array<double, kVarsPerState> signal_plus_interf{};
    signal_plus_interf[victim - 1] = st.gain(victim, victim);
    signal_plus_interf[other - 1] = st.gain(victim, other);
    f.add(s, p, signal_plus_interf);
    f.add(s, -p, coef_for(other, st.gain(victim, other)));
    f.add(s, p, coef_for(other, st.gain(other, other)));
  }
  return f;
}

}  // namespace rates

}  // namespace ergoifc
