#include "ergoifc/allocate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Cholesky>

#include "ergoifc/error.hpp"

namespace ergoifc {

namespace {

double level_power(double level, double gain) {
  if (gain <= 0.0) return 0.0;
  return std::max(level - 1.0 / gain, 0.0);
}

double spent(std::span<const std::pair<double, double>> dist, double level) {
  double acc = 0.0;
  for (const auto& [g, p] : dist) acc += p * level_power(level, g);
  return acc;
}

}  // namespace

WaterfillResult waterfill(std::span<const std::pair<double, double>> gain_dist, double budget) {
  if (!(budget >= 0.0) || !std::isfinite(budget)) throw InvalidInput("waterfill budget must be nonnegative");
  double active_mass = 0.0;
  double max_inverse = 0.0;
  double min_inverse = std::numeric_limits<double>::infinity();
  for (const auto& [g, p] : gain_dist) {
    if (g < 0.0 || !std::isfinite(g)) throw InvalidInput("waterfill gains must be finite and nonnegative");
    if (g > 0.0) {
      active_mass += p;
      max_inverse = std::max(max_inverse, 1.0 / g);
      min_inverse = std::min(min_inverse, 1.0 / g);
    }
  }
  if (active_mass == 0.0) throw InvalidInput("waterfill needs at least one positive gain");

  WaterfillResult r;
  if (budget == 0.0) {
    r.water_level = min_inverse;
  } else {
    double lo = min_inverse;
    double hi = max_inverse + budget / active_mass;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      (spent(gain_dist, mid) < budget ? lo : hi) = mid;
    }
    double level = 0.5 * (lo + hi);
    // Closed form on the active set recovers the last bits bisection leaves.
    double mass = 0.0;
    double inv = 0.0;
    for (const auto& [g, p] : gain_dist) {
      if (g > 0.0 && level - 1.0 / g > 0.0) {
        mass += p;
        inv += p / g;
      }
    }
    if (mass > 0.0) {
      const double exact = (budget + inv) / mass;
      bool consistent = true;
      for (const auto& [g, p] : gain_dist) {
        if (g <= 0.0) continue;
        const bool was_active = level - 1.0 / g > 0.0;
        const bool is_active = exact - 1.0 / g > 0.0;
        if (was_active != is_active && std::abs(exact - 1.0 / g) > 1e-12 * exact) consistent = false;
      }
      if (consistent) level = exact;
    }
    r.water_level = level;
  }
  r.power.reserve(gain_dist.size());
  for (const auto& [g, p] : gain_dist) {
    const double pw = level_power(r.water_level, g);
    r.power.push_back(pw);
    r.achieved_rate += p * capacity(g * pw);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Opportunistic MAC waterfilling

namespace {

struct MacState {
  std::size_t index;
  double prob;
  double a;  // gain of user 1 at the receiver
  double b;  // gain of user 2 at the receiver
};

double mac_value(const std::vector<MacState>& st, const std::vector<double>& p1, const std::vector<double>& p2) {
  double v = 0.0;
  for (std::size_t i = 0; i < st.size(); ++i) v += st[i].prob * capacity(st[i].a * p1[i] + st[i].b * p2[i]);
  return v;
}

// Waterfills one user over the subset `mine` of states; returns per-state power
// (zero outside the subset).  A user with no usable state keeps its power unspent.
std::vector<double> waterfill_subset(const std::vector<MacState>& st, const std::vector<bool>& mine, bool first,
                                     double budget) {
  std::vector<double> out(st.size(), 0.0);
  if (budget <= 0.0) return out;
  std::vector<std::pair<double, double>> dist;
  std::vector<std::size_t> where;
  for (std::size_t i = 0; i < st.size(); ++i) {
    const double g = first ? st[i].a : st[i].b;
    if (mine[i] && g > 0.0) {
      dist.emplace_back(g, st[i].prob);
      where.push_back(i);
    }
  }
  if (dist.empty()) return out;
  const auto wf = waterfill(dist, budget);
  for (std::size_t k = 0; k < where.size(); ++k) out[where[k]] = wf.power[k];
  return out;
}

}  // namespace

OptimizerReport mac_opportunistic_waterfill(const FadingProcess& process, int receiver, const PowerBudget& budget) {
  if (receiver != 1 && receiver != 2) throw InvalidInput("receiver must be 1 or 2");
  budget.validate();
  const bool user1_silent = process.link_identically_zero(receiver, 1) || budget.p1 == 0.0;
  const bool user2_silent = process.link_identically_zero(receiver, 2) || budget.p2 == 0.0;
  if (process.link_identically_zero(receiver, 1) && process.link_identically_zero(receiver, 2)) {
    throw InvalidInput("both links to the receiver are identically zero");
  }

  std::vector<MacState> st;
  st.reserve(process.size());
  for (std::size_t s = 0; s < process.size(); ++s) {
    const auto& f = process.state(s);
    st.push_back({s, process.prob(s), user1_silent ? 0.0 : f.gain(receiver, 1),
                  user2_silent ? 0.0 : f.gain(receiver, 2)});
  }
  // Ascending g2/g1; states where both gains vanish sit anywhere, they get no power.
  std::vector<std::size_t> order(st.size());
  std::iota(order.begin(), order.end(), 0);
  auto angle = [&](std::size_t i) { return std::atan2(st[i].b, st[i].a); };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return angle(x) < angle(y); });
  // Group equal ratios.
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t i = order[k];
    if (!groups.empty()) {
      const std::size_t j = groups.back().front();
      const double lhs = st[i].b * st[j].a;
      const double rhs = st[j].b * st[i].a;
      if (std::abs(lhs - rhs) <= 1e-12 * std::max({std::abs(lhs), std::abs(rhs), 1e-300})) {
        groups.back().push_back(i);
        continue;
      }
    }
    groups.push_back({i});
  }

  double best = -1.0;
  std::vector<double> best1;
  std::vector<double> best2;
  int candidates = 0;
  auto consider = [&](std::vector<double> p1, std::vector<double> p2) {
    ++candidates;
    const double v = mac_value(st, p1, p2);
    if (v > best + 1e-15) {
      best = v;
      best1 = std::move(p1);
      best2 = std::move(p2);
    }
  };

  // Pure splits: groups [0, k) to user 1, [k, G) to user 2.
  for (std::size_t k = 0; k <= groups.size(); ++k) {
    std::vector<bool> mine1(st.size(), false);
    for (std::size_t g = 0; g < k; ++g) {
      for (std::size_t i : groups[g]) mine1[i] = true;
    }
    std::vector<bool> mine2(st.size());
    for (std::size_t i = 0; i < st.size(); ++i) mine2[i] = !mine1[i];
    consider(waterfill_subset(st, mine1, true, budget.p1), waterfill_subset(st, mine2, false, budget.p2));
  }

  // Shared groups: multipliers tied at ratio r = b/a of group m.
  if (!user1_silent && !user2_silent) {
    for (std::size_t m = 0; m < groups.size(); ++m) {
      const auto& tied = groups[m];
      const double r = st[tied.front()].b / st[tied.front()].a;
      if (!(r > 0.0) || !std::isfinite(r)) continue;
      std::vector<int> owner(st.size(), 0);  // 1, 2 or 0 for tied
      for (std::size_t g = 0; g < groups.size(); ++g) {
        for (std::size_t i : groups[g]) owner[i] = g < m ? 1 : (g > m ? 2 : 0);
      }
      // User-1 water level nu; user 2 sits at nu / r.
      auto parts = [&](double nu, double& a1, double& a2, double& t) {
        a1 = a2 = t = 0.0;
        for (std::size_t i = 0; i < st.size(); ++i) {
          if (owner[i] == 1) a1 += st[i].prob * level_power(nu, st[i].a);
          if (owner[i] == 2) a2 += st[i].prob * level_power(nu / r, st[i].b);
          if (owner[i] == 0) t += st[i].prob * level_power(nu, st[i].a);
        }
      };
      const double target = budget.p1 + r * budget.p2;
      double lo = 0.0;
      double hi = 1.0;
      double a1 = 0.0, a2 = 0.0, t = 0.0;
      for (int it = 0; it < 200; ++it) {
        parts(hi, a1, a2, t);
        if (a1 + r * a2 + t >= target) break;
        hi *= 2.0;
      }
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        parts(mid, a1, a2, t);
        (a1 + r * a2 + t < target ? lo : hi) = mid;
      }
      const double nu = 0.5 * (lo + hi);
      parts(nu, a1, a2, t);
      if (t <= 0.0) continue;
      double theta = (budget.p1 - a1) / t;
      if (theta < -1e-12 || theta > 1.0 + 1e-12) continue;
      theta = std::clamp(theta, 0.0, 1.0);
      std::vector<double> p1(st.size(), 0.0);
      std::vector<double> p2(st.size(), 0.0);
      for (std::size_t i = 0; i < st.size(); ++i) {
        if (owner[i] == 1) p1[i] = level_power(nu, st[i].a);
        if (owner[i] == 2) p2[i] = level_power(nu / r, st[i].b);
        if (owner[i] == 0) {
          const double received = std::max(st[i].a * nu - 1.0, 0.0);
          p1[i] = theta * received / st[i].a;
          p2[i] = (1.0 - theta) * received / st[i].b;
        }
      }
      const double e1 = std::inner_product(p1.begin(), p1.end(), st.begin(), 0.0, std::plus<>(),
                                           [](double p, const MacState& s) { return p * s.prob; });
      const double e2 = std::inner_product(p2.begin(), p2.end(), st.begin(), 0.0, std::plus<>(),
                                           [](double p, const MacState& s) { return p * s.prob; });
      if (e1 > budget.p1 + kPowerTolerance || e2 > budget.p2 + kPowerTolerance) continue;
      consider(std::move(p1), std::move(p2));
    }
  }

  OptimizerReport report;
  report.policy.resize(process.size());
  for (std::size_t i = 0; i < st.size(); ++i) report.policy[st[i].index] = {best1[i], best2[i]};
  report.value = best;
  report.iterations = candidates;
  report.kkt_residual = kkt_residual(process, report.policy, rates::receiver_sum(process, receiver), budget);
  report.converged = report.kkt_residual <= 1e-6;
  return report;
}

// ---------------------------------------------------------------------------
// KKT residual

double kkt_residual(const FadingProcess& process, const PowerPolicy& policy, const RateFunction& objective,
                    const PowerBudget& budget) {
  if (policy.size() != process.size()) throw InvalidInput("policy length does not match state count");
  const auto grad = objective.gradient(policy);
  double total = 0.0;
  for (int user = 1; user <= 2; ++user) {
    const double cap = budget.of(user);
    std::vector<double> y(process.size());
    double ymax = 0.0;
    for (std::size_t s = 0; s < process.size(); ++s) {
      y[s] = policy[s].of(user) + grad[s].of(user) / process.prob(s);
      ymax = std::max(ymax, y[s]);
    }
    auto mass = [&](double tau) {
      double acc = 0.0;
      for (std::size_t s = 0; s < y.size(); ++s) acc += process.prob(s) * std::max(y[s] - tau, 0.0);
      return acc;
    };
    double tau = 0.0;
    if (mass(0.0) > cap) {
      double lo = 0.0;
      double hi = ymax;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (mass(mid) > cap ? lo : hi) = mid;
      }
      tau = hi;
    }
    double station = 0.0;
    for (std::size_t s = 0; s < y.size(); ++s) {
      const double d = policy[s].of(user) - std::max(y[s] - tau, 0.0);
      station += process.prob(s) * d * d;
    }
    const double slack = std::max(cap - average_power(process, policy, user), 0.0);
    total += std::sqrt(station) + tau * slack;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Log-barrier epigraph solver

namespace {

class Barrier {
 public:
  explicit Barrier(const EpigraphProblem& pb) : pb_(pb), n_states_(pb.process->size()) {
    const double p1 = pb.budget.p1;
    const double p2 = pb.budget.p2;
    for (std::size_t s = 0; s < n_states_; ++s) {
      if (p1 > 0.0) add_free(s, 0);
      if (p2 > 0.0) add_free(s, 1);
      const bool pinned = !pb.private_pinned_zero.empty() && pb.private_pinned_zero[s];
      if (pb.with_private_power && p2 > 0.0 && !pinned) add_free(s, 2);
    }
    n_free_ = free_.size();
    n_ = n_free_ + pb.groups.size();
  }

  [[nodiscard]] std::size_t dim() const { return n_; }

  [[nodiscard]] Decision expand(const Eigen::VectorXd& z) const {
    Decision x(kVarsPerState * n_states_, 0.0);
    for (std::size_t j = 0; j < n_free_; ++j) x[free_[j]] = z(static_cast<Eigen::Index>(j));
    return x;
  }

  [[nodiscard]] Eigen::VectorXd initial(const Decision* start) const {
    Eigen::VectorXd z(static_cast<Eigen::Index>(n_));
    Decision x(kVarsPerState * n_states_, 0.0);
    const double eps = 1e-3;
    for (std::size_t s = 0; s < n_states_; ++s) {
      for (int u = 0; u < 2; ++u) {
        const double half = 0.5 * pb_.budget.of(u + 1);
        double v = half;
        if (start != nullptr) v = (1.0 - eps) * std::max((*start)[kVarsPerState * s + u], 0.0) + eps * half;
        x[kVarsPerState * s + u] = v;
      }
      double alpha = 0.5;
      if (start != nullptr) {
        const double p2 = (*start)[kVarsPerState * s + 1];
        const double q = (*start)[kVarsPerState * s + 2];
        const double a = p2 > 0.0 ? std::clamp(q / p2, 0.0, 1.0) : 0.5;
        alpha = (1.0 - eps) * a + eps * 0.5;
      }
      x[kVarsPerState * s + 2] = alpha * x[kVarsPerState * s + 1];
    }
    // Strictly inside both budgets.
    for (int u = 0; u < 2; ++u) {
      double e = 0.0;
      for (std::size_t s = 0; s < n_states_; ++s) e += pb_.process->prob(s) * x[kVarsPerState * s + u];
      const double cap = pb_.budget.of(u + 1);
      if (cap > 0.0 && e >= (1.0 - eps) * cap) {
        const double scale = (1.0 - eps) * cap / e;
        for (std::size_t s = 0; s < n_states_; ++s) {
          x[kVarsPerState * s + u] *= scale;
          if (u == 1) x[kVarsPerState * s + 2] *= scale;
        }
      }
    }
    for (std::size_t j = 0; j < n_free_; ++j) z(static_cast<Eigen::Index>(j)) = x[free_[j]];
    for (std::size_t g = 0; g < pb_.groups.size(); ++g) {
      z(static_cast<Eigen::Index>(n_free_ + g)) = min_value(g, x) - 1.0;
    }
    return z;
  }

  [[nodiscard]] double min_value(std::size_t g, const Decision& x) const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& f : pb_.groups[g].functions) m = std::min(m, f.value(x));
    return m;
  }

  /// Barrier value, or -inf outside the strict interior.
  [[nodiscard]] double value(const Eigen::VectorXd& z, double mu) const {
    const Decision x = expand(z);
    double phi = 0.0;
    for (std::size_t g = 0; g < pb_.groups.size(); ++g) {
      const double t = z(static_cast<Eigen::Index>(n_free_ + g));
      phi += pb_.groups[g].cost * t;
      for (const auto& f : pb_.groups[g].functions) {
        const double s = f.value(x) - t;
        if (!(s > 0.0)) return -std::numeric_limits<double>::infinity();
        phi += mu * std::log(s);
      }
    }
    for (std::size_t j = 0; j < n_free_; ++j) {
      const double v = z(static_cast<Eigen::Index>(j));
      if (!(v > 0.0)) return -std::numeric_limits<double>::infinity();
      phi += mu * std::log(v);
    }
    for (int u = 0; u < 2; ++u) {
      if (!(pb_.budget.of(u + 1) > 0.0)) continue;
      const double b = budget_slack(x, u);
      if (!(b > 0.0)) return -std::numeric_limits<double>::infinity();
      phi += mu * std::log(b);
    }
    for (const auto& [p2, q] : split_pairs_) {
      const double c = z(p2) - z(q);
      if (!(c > 0.0)) return -std::numeric_limits<double>::infinity();
      phi += mu * std::log(c);
    }
    return phi;
  }

  void derivatives(const Eigen::VectorXd& z, double mu, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const {
    const Decision x = expand(z);
    const std::size_t nx = x.size();
    grad.setZero(static_cast<Eigen::Index>(n_));
    hess.setZero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
    Eigen::MatrixXd hx = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nx), static_cast<Eigen::Index>(nx));
    std::vector<double> gf(nx);
    Eigen::VectorXd v(static_cast<Eigen::Index>(n_));
    for (std::size_t g = 0; g < pb_.groups.size(); ++g) {
      const auto tg = static_cast<Eigen::Index>(n_free_ + g);
      const double t = z(tg);
      grad(tg) += pb_.groups[g].cost;
      for (const auto& f : pb_.groups[g].functions) {
        const double s = f.value(x) - t;
        std::fill(gf.begin(), gf.end(), 0.0);
        f.add_gradient(x, 1.0, gf);
        f.add_hessian(x, mu / s, hx);
        v.setZero();
        for (std::size_t j = 0; j < n_free_; ++j) v(static_cast<Eigen::Index>(j)) = gf[free_[j]];
        v(tg) = -1.0;
        grad += (mu / s) * v;
        hess.noalias() -= (mu / (s * s)) * v * v.transpose();
      }
    }
    for (std::size_t a = 0; a < n_free_; ++a) {
      for (std::size_t b = 0; b < n_free_; ++b) {
        hess(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) += hx(
            static_cast<Eigen::Index>(free_[a]), static_cast<Eigen::Index>(free_[b]));
      }
    }
    for (std::size_t j = 0; j < n_free_; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      grad(jj) += mu / z(jj);
      hess(jj, jj) -= mu / (z(jj) * z(jj));
    }
    for (int u = 0; u < 2; ++u) {
      if (!(pb_.budget.of(u + 1) > 0.0)) continue;
      const double b = budget_slack(x, u);
      v.setZero();
      for (std::size_t j = 0; j < n_free_; ++j) {
        if (free_[j] % kVarsPerState == static_cast<std::size_t>(u)) {
          v(static_cast<Eigen::Index>(j)) = pb_.process->prob(free_[j] / kVarsPerState);
        }
      }
      grad -= (mu / b) * v;
      hess.noalias() -= (mu / (b * b)) * v * v.transpose();
    }
    for (const auto& [p2, q] : split_pairs_) {
      const double c = z(p2) - z(q);
      grad(p2) += mu / c;
      grad(q) -= mu / c;
      const double h = mu / (c * c);
      hess(p2, p2) -= h;
      hess(q, q) -= h;
      hess(p2, q) += h;
      hess(q, p2) += h;
    }
  }

  [[nodiscard]] std::size_t n_free() const { return n_free_; }

 private:
  void add_free(std::size_t s, std::size_t var) {
    const std::size_t idx = kVarsPerState * s + var;
    if (var == 2) {
      // Pair (P2, q) with q <= P2; P2 was registered just before.
      split_pairs_.emplace_back(static_cast<Eigen::Index>(free_.size() - 1), static_cast<Eigen::Index>(free_.size()));
    }
    free_.push_back(idx);
  }

  [[nodiscard]] double budget_slack(const Decision& x, int u) const {
    double e = 0.0;
    for (std::size_t s = 0; s < n_states_; ++s) e += pb_.process->prob(s) * x[kVarsPerState * s + u];
    return pb_.budget.of(u + 1) - e;
  }

  const EpigraphProblem& pb_;
  std::size_t n_states_;
  std::vector<std::size_t> free_;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> split_pairs_;
  std::size_t n_free_ = 0;
  std::size_t n_ = 0;
};

}  // namespace

EpigraphSolution solve_epigraph(const EpigraphProblem& problem, const Decision* start, const BarrierOptions& options) {
  if (problem.process == nullptr) throw InvalidInput("epigraph problem has no process");
  problem.budget.validate();
  if (problem.groups.empty()) throw InvalidInput("epigraph problem has no groups");
  for (const auto& g : problem.groups) {
    if (g.functions.empty()) throw InvalidInput("epigraph group without functions");
  }
  Barrier barrier(problem);
  Eigen::VectorXd z = barrier.initial(start);
  const auto n = static_cast<Eigen::Index>(barrier.dim());

  EpigraphSolution sol;
  Eigen::VectorXd grad(n);
  Eigen::MatrixXd hess(n, n);
  bool last_stage_ok = false;
  for (double mu = options.mu_initial;; mu *= options.mu_factor) {
    const bool final_stage = mu <= options.mu_final * 1.000001;
    bool stage_ok = false;
    double phi = barrier.value(z, mu);
    for (int it = 0; it < options.max_newton_per_stage; ++it) {
      ++sol.newton_iterations;
      barrier.derivatives(z, mu, grad, hess);
      Eigen::MatrixXd neg = -hess;
      const double scale = std::max(1.0, neg.diagonal().cwiseAbs().maxCoeff());
      Eigen::LLT<Eigen::MatrixXd> llt(neg);
      double shift = 0.0;
      while (llt.info() != Eigen::Success) {
        shift = shift == 0.0 ? 1e-10 * scale : shift * 10.0;
        llt.compute(neg + shift * Eigen::MatrixXd::Identity(n, n));
        if (shift > 1e12 * scale) break;
      }
      if (llt.info() != Eigen::Success) break;
      const Eigen::VectorXd d = llt.solve(grad);
      const double decrement = grad.dot(d);
      if (!(decrement >= 0.0) || !std::isfinite(decrement)) break;
      if (decrement <= 1e-13) {
        stage_ok = true;
        break;
      }
      double step = 1.0;
      bool moved = false;
      while (step > 1e-16) {
        const Eigen::VectorXd trial = z + step * d;
        const double val = barrier.value(trial, mu);
        if (std::isfinite(val) && val >= phi + 1e-4 * step * decrement) {
          z = trial;
          phi = val;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) {
        // Rounding floor: no representable ascent left.
        stage_ok = decrement <= 1e-9;
        break;
      }
    }
    // Below this mu the gaps f - t approach rounding level and mu / gap loses accuracy.
    constexpr double kDualMu = 1e-9;
    if (mu >= kDualMu * 0.999 || sol.duals.empty()) {
      sol.duals.assign(problem.groups.size(), {});
      const Decision x = barrier.expand(z);
      for (std::size_t g = 0; g < problem.groups.size(); ++g) {
        const double t = z(static_cast<Eigen::Index>(barrier.n_free() + g));
        for (const auto& f : problem.groups[g].functions) sol.duals[g].push_back(mu / (f.value(x) - t));
      }
    }
    if (final_stage) {
      last_stage_ok = stage_ok;
      break;
    }
  }
  sol.x = barrier.expand(z);
  sol.value = 0.0;
  for (std::size_t g = 0; g < problem.groups.size(); ++g) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& f : problem.groups[g].functions) m = std::min(m, f.value(sol.x));
    sol.value += problem.groups[g].cost * m;
  }
  sol.converged = last_stage_ok;
  return sol;
}

OptimizerReport maximize_min_concave(const FadingProcess& process, const std::vector<RateFunction>& objectives,
                                     const PowerBudget& budget, double tol) {
  if (!(tol > 0.0)) throw InvalidInput("tolerance must be positive");
  if (objectives.empty()) throw InvalidInput("need at least one objective");
  for (const auto& f : objectives) {
    if (!f.is_concave()) throw InvalidInput("maximize_min_concave requires concave objectives");
  }
  EpigraphProblem pb;
  pb.process = &process;
  pb.budget = budget;
  pb.groups.push_back({1.0, objectives});
  const auto sol = solve_epigraph(pb);

  OptimizerReport r;
  r.policy = to_policy(sol.x);
  r.value = sol.value;
  r.iterations = sol.newton_iterations;
  const auto& w = sol.duals.front();
  const double wsum = std::accumulate(w.begin(), w.end(), 0.0);
  RateFunction combined;
  double slackness = 0.0;
  for (std::size_t i = 0; i < objectives.size(); ++i) {
    const double wi = wsum > 0.0 ? w[i] / wsum : 1.0 / static_cast<double>(objectives.size());
    combined += wi * objectives[i];
    slackness += wi * (objectives[i].value(sol.x) - sol.value);
  }
  r.kkt_residual = kkt_residual(process, r.policy, combined, budget) + slackness;
  r.converged = sol.converged && r.kkt_residual <= tol;
  return r;
}

}  // namespace ergoifc
