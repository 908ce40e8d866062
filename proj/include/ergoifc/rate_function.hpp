#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "ergoifc/channel.hpp"

namespace ergoifc {

/// Per-state decision variables.  `Private2` is the private-message power of
/// user 2 under rate splitting; it is unused by the non-split objectives.
enum class Var : std::size_t { P1 = 0, P2 = 1, Private2 = 2 };

inline constexpr std::size_t kVarsPerState = 3;

/// Flat decision vector, state-major: x[3*s + v].
using Decision = std::vector<double>;

Decision to_decision(const PowerPolicy& policy);
PowerPolicy to_policy(std::span<const double> x);

/// weight * log2(1 + coef . x_state)
struct LogTerm {
  std::size_t state = 0;
  double weight = 0.0;
  std::array<double, kVarsPerState> coef{};
};

/**
 * A fading-averaged rate written as a weighted sum of log2(1 + affine) terms.
 *
 * Every rate expression in the library (single-user caps, receiver sum caps,
 * treating-interference-as-noise and rate-splitting terms) is of this form.
 * With nonnegative weights the function is concave in the per-state powers.
 */
class RateFunction {
 public:
  RateFunction() = default;
  explicit RateFunction(double constant) : constant_(constant) {}

  RateFunction& add(std::size_t state, double weight, std::array<double, kVarsPerState> coef);
  RateFunction& add_constant(double c);
  RateFunction& operator+=(const RateFunction& other);
  RateFunction& operator*=(double scale);

  [[nodiscard]] double value(std::span<const double> x) const;
  /// grad += scale * d value / dx
  void add_gradient(std::span<const double> x, double scale, std::span<double> grad) const;
  /// hess += scale * d^2 value / dx^2 (dense, over the full decision vector)
  void add_hessian(std::span<const double> x, double scale, Eigen::MatrixXd& hess) const;

  [[nodiscard]] bool is_concave() const;
  [[nodiscard]] const std::vector<LogTerm>& terms() const { return terms_; }
  [[nodiscard]] double constant() const { return constant_; }

  /// Convenience for policies without the private-power variable.
  [[nodiscard]] double value(const PowerPolicy& policy) const;
  [[nodiscard]] std::vector<StatePower> gradient(const PowerPolicy& policy) const;

 private:
  double constant_ = 0.0;
  std::vector<LogTerm> terms_;
};

RateFunction operator+(RateFunction a, const RateFunction& b);
RateFunction operator*(double scale, RateFunction f);

namespace rates {

/// E[C(g_rx,tx * P_tx)]
RateFunction single_user(const FadingProcess& process, int rx, int tx);
/// E[C(g_rx,1 P1 + g_rx,2 P2)]
RateFunction receiver_sum(const FadingProcess& process, int rx);
/// Sum over users of E[C(g_kk P_k)]: both users on their direct links.
RateFunction direct_sum(const FadingProcess& process);
/// Sum over users of E[C(g_jk P_k)], j != k: both users on their cross links.
RateFunction cross_sum(const FadingProcess& process);
/**
 * Treating interference as noise at the receiver of `victim`, plus the
 * interference-free rate of the other user:
 * E[C(g_vv P_v / (1 + g_vo P_o))] + E[C(g_oo P_o)].
 */
RateFunction weak_sum(const FadingProcess& process, int victim);

}  // namespace rates

}  // namespace ergoifc
