#pragma once

// Reference computations written from first principles.  Nothing here calls
// the library's optimizers, so agreement is evidence rather than tautology.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

inline double c2(double x) { return std::log2(1.0 + x); }

struct State {
  double g11, g12, g21, g22, p;
};

/// Closed-form waterfilling: try active sets of the k strongest gains.
struct Waterfill {
  std::vector<double> power;
  double level = 0.0;
  double rate = 0.0;
};

inline Waterfill waterfill(const std::vector<double>& g, const std::vector<double>& p, double budget) {
  std::vector<std::size_t> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return g[a] > g[b]; });
  Waterfill out;
  out.power.assign(g.size(), 0.0);
  double sum_p = 0.0;
  double sum_inv = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto i = order[k];
    if (g[i] <= 0.0) break;
    sum_p += p[i];
    sum_inv += p[i] / g[i];
    const double nu = (budget + sum_inv) / sum_p;
    const bool next_inactive = k + 1 == order.size() || g[order[k + 1]] <= 0.0 || nu <= 1.0 / g[order[k + 1]];
    if (nu > 1.0 / g[i] && next_inactive) {
      out.level = nu;
      break;
    }
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] > 0.0) out.power[i] = std::max(out.level - 1.0 / g[i], 0.0);
    out.rate += p[i] * c2(g[i] * out.power[i]);
  }
  return out;
}

/// max R1 + R2 over the intersection of both receivers' pentagons.
inline double cmac_sum(const std::vector<State>& st, const std::vector<double>& p1, const std::vector<double>& p2) {
  double a1 = 0, a2 = 0, b1 = 0, b2 = 0, s1 = 0, s2 = 0;
  for (std::size_t i = 0; i < st.size(); ++i) {
    const auto& s = st[i];
    a1 += s.p * c2(s.g11 * p1[i]);
    a2 += s.p * c2(s.g21 * p1[i]);
    b1 += s.p * c2(s.g12 * p2[i]);
    b2 += s.p * c2(s.g22 * p2[i]);
    s1 += s.p * c2(s.g11 * p1[i] + s.g12 * p2[i]);
    s2 += s.p * c2(s.g21 * p1[i] + s.g22 * p2[i]);
  }
  return std::min({s1, s2, std::min(a1, a2) + std::min(b1, b2)});
}

/**
 * Exhaustive search over two-state policies that exhaust both budgets: the
 * first state's powers run over [0, budget / p_A] in `step` plus the exact
 * endpoint, the second state takes the remainder.
 */
template <typename F>
double grid_two_state(const std::vector<State>& st, double pb1, double pb2, double step, F objective) {
  const double pa = st[0].p;
  const double pbp = st[1].p;
  double best = -std::numeric_limits<double>::infinity();
  const auto axis = [&](double budget) {
    std::vector<double> xs;
    const double top = budget / pa;
    for (double x = 0.0; x < top - 1e-12; x += step) xs.push_back(x);
    xs.push_back(top);
    return xs;
  };
  for (const double x1 : axis(pb1)) {
    const double y1 = std::max((pb1 - pa * x1) / pbp, 0.0);
    for (const double x2 : axis(pb2)) {
      const double y2 = std::max((pb2 - pa * x2) / pbp, 0.0);
      best = std::max(best, objective(std::vector<double>{x1, y1}, std::vector<double>{x2, y2}));
    }
  }
  return best;
}

/// Central finite difference of f along coordinate i.
inline double central_diff(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x,
                           std::size_t i, double h = 1e-6) {
  const double x0 = x[i];
  x[i] = x0 + h;
  const double up = f(x);
  x[i] = x0 - h;
  const double down = f(x);
  return (up - down) / (2.0 * h);
}

}  // namespace oracle
