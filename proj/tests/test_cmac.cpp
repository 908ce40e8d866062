#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "ergoifc/classify.hpp"
#include "ergoifc/cmac.hpp"
#include "ergoifc/error.hpp"
#include "oracles.hpp"

using namespace ergoifc;
using cmac::CaseLabel;

namespace {

const FadingProcess& evs_single() {
  static const auto p = make_discrete_channel({{{1, 4, 4, 1}, 1.0}});
  return p;
}

const FadingProcess& us_two_state() {
  static const auto p = make_discrete_channel({{{1, 1.1025, 6.25, 1}, 0.5}, {{1, 6.25, 1.1025, 1}, 0.5}});
  return p;
}

const FadingProcess& c3c_single() {
  static const auto p = make_discrete_channel({{{1, 1.1025, 1.1025, 1}, 1.0}});
  return p;
}

std::vector<oracle::State> to_oracle(const FadingProcess& p) {
  std::vector<oracle::State> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& s = p.state(i);
    out.push_back({s.g11, s.g12, s.g21, s.g22, p.prob(i)});
  }
  return out;
}

}  // namespace

TEST_CASE("mac_bounds") {
  const auto m = cmac::mac_bounds(evs_single(), {{1, 1}}, 1);
  CHECK(std::abs(m.r1_cap - 1.0) <= 1e-12);
  CHECK(std::abs(m.r2_cap - std::log2(5.0)) <= 1e-12);
  CHECK(std::abs(m.sum_cap - std::log2(6.0)) <= 1e-12);

  const auto z = cmac::mac_bounds(evs_single(), {{0, 0}}, 2);
  CHECK(z.r1_cap == 0.0);
  CHECK(z.r2_cap == 0.0);
  CHECK(z.sum_cap == 0.0);

  const auto u = cmac::mac_bounds(us_two_state(), {{1, 1}, {1, 1}}, 1);
  CHECK(std::abs(u.sum_cap - 0.5 * (std::log2(3.1025) + std::log2(8.25))) <= 1e-12);
  CHECK(std::abs(u.sum_cap - 2.3389) <= 1e-4);
  CHECK_THROWS_AS((cmac::mac_bounds(evs_single(), {{1, 1}}, 3)), InvalidInput);
}

TEST_CASE("pentagon invariants hold at random policies") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  for (int t = 0; t < 100; ++t) {
    const auto p = make_discrete_channel({{{u(rng), u(rng), u(rng), u(rng)}, 0.4}, {{u(rng), u(rng), u(rng), u(rng)}, 0.6}});
    const PowerPolicy pol = {{u(rng), u(rng)}, {u(rng), u(rng)}};
    for (int rx = 1; rx <= 2; ++rx) {
      const auto m = cmac::mac_bounds(p, pol, rx);
      CHECK(m.r1_cap >= 0.0);
      CHECK(std::max(m.r1_cap, m.r2_cap) <= m.sum_cap + 1e-12);
      CHECK(m.sum_cap <= m.r1_cap + m.r2_cap + 1e-12);
      CHECK(cmac::sum_rate_fixed_policy(p, pol) <= m.sum_cap + 1e-12);
    }
    const auto st = to_oracle(p);
    CHECK(std::abs(cmac::sum_rate_fixed_policy(p, pol) -
                   oracle::cmac_sum(st, {pol[0].p1, pol[1].p1}, {pol[0].p2, pol[1].p2})) <= 1e-12);
    const auto w = cmac::weighted_max_fixed_policy(p, pol, {1, 1});
    CHECK(std::abs(w.value - cmac::sum_rate_fixed_policy(p, pol)) <= 1e-12);
    // The four case sums bracket the polytope value from above.
    const auto s = cmac::case_sum_rates(p, pol);
    CHECK(cmac::sum_rate_fixed_policy(p, pol) <= std::min({s.s1, s.s2, s.s3a, s.s3b}) + 1e-12);
  }
}

TEST_CASE("sum_rate_fixed_policy examples") {
  CHECK(std::abs(cmac::sum_rate_fixed_policy(evs_single(), {{1, 1}}) - 2.0) <= 1e-12);
  CHECK(std::abs(cmac::sum_rate_fixed_policy(us_two_state(), {{1, 1}, {1, 1}}) - 2.0) <= 1e-12);
  CHECK(std::abs(cmac::sum_rate_fixed_policy(c3c_single(), {{1, 1}}) - std::log2(3.1025)) <= 1e-12);
}

TEST_CASE("case_sum_rates examples") {
  const auto a = cmac::case_sum_rates(evs_single(), {{1, 1}});
  CHECK(std::abs(a.s1 - 2.0) <= 1e-12);
  CHECK(std::abs(a.s2 - 2 * std::log2(5.0)) <= 1e-12);
  CHECK(std::abs(a.s3a - std::log2(6.0)) <= 1e-12);
  CHECK(std::abs(a.s3b - std::log2(6.0)) <= 1e-12);

  const auto b = cmac::case_sum_rates(c3c_single(), {{1, 1}});
  CHECK(std::abs(b.s2 - 2 * std::log2(2.1025)) <= 1e-12);
  CHECK(std::abs(b.s2 - 2.1442) <= 1e-4);

  const auto z = cmac::case_sum_rates(evs_single(), {{0, 0}});
  CHECK(z.s1 == 0.0);
  CHECK(z.s3b == 0.0);
}

TEST_CASE("identify_case") {
  CHECK(cmac::identify_case(evs_single(), {{1, 1}}) == CaseLabel::C1);
  CHECK(cmac::identify_case(c3c_single(), {{1, 1}}) == CaseLabel::C3c);
  const auto swapped = make_discrete_channel({{{4, 1, 1, 4}, 1.0}});
  CHECK(cmac::identify_case(swapped, {{1, 1}}) == CaseLabel::C2);
  // All four sums equal (zero policy): no label.
  CHECK_THROWS_AS((cmac::identify_case(evs_single(), {{0, 0}})), ConvergenceFailure);
}

TEST_CASE("match_case labels are exclusive and cover boundary ties") {
  using S = cmac::CaseSums;
  CHECK(cmac::match_case(S{1.0, 2.0, 1.5, 1.6}) == CaseLabel::C1);
  CHECK(cmac::match_case(S{2.0, 1.0, 1.5, 1.6}) == CaseLabel::C2);
  CHECK(cmac::match_case(S{2.0, 2.1, 1.5, 1.6}) == CaseLabel::C3a);
  CHECK(cmac::match_case(S{2.0, 2.1, 1.7, 1.6}) == CaseLabel::C3b);
  CHECK(cmac::match_case(S{2.0, 2.1, 1.6, 1.6}) == CaseLabel::C3c);
  CHECK(cmac::match_case(S{1.5, 2.1, 1.5, 1.6}) == CaseLabel::B1_3a);
  CHECK(cmac::match_case(S{2.1, 1.5, 1.5, 1.6}) == CaseLabel::B2_3a);
  CHECK(cmac::match_case(S{1.6, 2.1, 1.7, 1.6}) == CaseLabel::B1_3b);
  CHECK(cmac::match_case(S{2.1, 1.6, 1.7, 1.6}) == CaseLabel::B2_3b);
  CHECK(cmac::match_case(S{1.6, 2.1, 1.6, 1.6}) == CaseLabel::B1_3c);
  CHECK(cmac::match_case(S{2.1, 1.6, 1.6, 1.6}) == CaseLabel::B2_3c);
  CHECK_FALSE(cmac::match_case(S{1.6, 1.6, 1.6, 1.6}).has_value());
}

TEST_CASE("sum_capacity examples") {
  const auto a = cmac::sum_capacity(evs_single(), {1, 1});
  CHECK(std::abs(a.value - 2.0) <= 1e-9);
  CHECK(a.label == CaseLabel::C1);
  CHECK(std::abs(a.policy[0].p1 - 1.0) <= 1e-9);
  CHECK(std::abs(a.policy[0].p2 - 1.0) <= 1e-9);

  const auto b = cmac::sum_capacity(c3c_single(), {1, 1});
  CHECK(std::abs(b.value - std::log2(3.1025)) <= 1e-6);
  CHECK(b.label == CaseLabel::C3c);
  CHECK(std::abs(b.policy[0].p1 - 1.0) <= 1e-6);

  const auto evs2 = make_discrete_channel({{{1, 9, 9, 1}, 0.5}, {{1, 0.25, 0.25, 1}, 0.5}});
  const auto c = cmac::sum_capacity(evs2, {1, 1});
  CHECK(std::abs(c.value - 2.0) <= 1e-9);
  CHECK(c.label == CaseLabel::C1);
  CHECK(std::abs(c.cross_check - c.value) <= 1e-6);
}

TEST_CASE("C1 acceptance coincides with the very strong condition") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.1, 6.0);
  for (int t = 0; t < 40; ++t) {
    const auto p = make_discrete_channel({{{u(rng), u(rng), u(rng), u(rng)}, 0.5}, {{u(rng), u(rng), u(rng), u(rng)}, 0.5}});
    const PowerBudget b{u(rng) / 3, u(rng) / 3};
    const auto evs = evs_condition(p, b);
    if (std::abs(evs.lhs - evs.rhs) < 1e-6) continue;
    const auto r = cmac::sum_capacity(p, b);
    CHECK((r.label == CaseLabel::C1) == evs.holds);
  }
}

TEST_CASE("sum_capacity is monotone in each budget") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  for (int t = 0; t < 10; ++t) {
    const auto p = make_discrete_channel({{{u(rng), u(rng), u(rng), u(rng)}, 0.5}, {{u(rng), u(rng), u(rng), u(rng)}, 0.5}});
    double prev = -1.0;
    for (double b1 : {0.25, 0.5, 1.0, 2.0}) {
      const double v = cmac::sum_capacity(p, {b1, 1.0}).value;
      CHECK(v >= prev - 1e-9);
      prev = v;
    }
  }
}

TEST_CASE("joint coding is never worse than per-state coding at the same policy") {
  const auto& p = us_two_state();
  const auto joint = cmac::sum_capacity(p, {1, 1});
  double separable = 0.0;
  for (std::size_t s = 0; s < p.size(); ++s) {
    const auto single = make_discrete_channel({{p.state(s), 1.0}});
    separable += p.prob(s) * cmac::sum_rate_fixed_policy(single, {joint.policy[s]});
  }
  CHECK(separable <= joint.value + 1e-12);
  CHECK(std::abs(separable - std::log2(3.1025)) <= 1e-6);
}

TEST_CASE("weighted_max_fixed_policy") {
  const auto r = cmac::weighted_max_fixed_policy(evs_single(), {{1, 1}}, {1, 2});
  CHECK(std::abs(r.r1 - 1.0) <= 1e-12);
  CHECK(std::abs(r.r2 - 1.0) <= 1e-12);
  CHECK(std::abs(r.value - 3.0) <= 1e-12);
  const auto z = cmac::weighted_max_fixed_policy(evs_single(), {{0, 0}}, {1, 2});
  CHECK(z.value == 0.0);
  CHECK_THROWS_AS((cmac::weighted_max_fixed_policy(evs_single(), {{1, 1}}, {0, 1})), InvalidInput);

  // Against a brute-force LP over the polytope.
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(0.1, 4.0);
  for (int t = 0; t < 50; ++t) {
    const auto p = make_discrete_channel({{{u(rng), u(rng), u(rng), u(rng)}, 1.0}});
    const PowerPolicy pol = {{u(rng), u(rng)}};
    const cmac::WeightPair w{u(rng), u(rng)};
    const auto m1 = cmac::mac_bounds(p, pol, 1);
    const auto m2 = cmac::mac_bounds(p, pol, 2);
    const double a = std::min(m1.r1_cap, m2.r1_cap), b = std::min(m1.r2_cap, m2.r2_cap),
                 cs = std::min(m1.sum_cap, m2.sum_cap);
    double best = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double r1 = a * i / 400.0;
      const double r2 = std::max(0.0, std::min(b, cs - r1));
      if (r1 + 0.0 <= cs) best = std::max(best, w.mu1 * r1 + w.mu2 * r2);
    }
    const auto got = cmac::weighted_max_fixed_policy(p, pol, w);
    CHECK(got.value >= best - 1e-12);
    CHECK(got.value <= best + (w.mu1 + w.mu2) * a / 400.0 + 1e-12);
  }
}

TEST_CASE("region_boundary") {
  SUBCASE("very strong channel gives the rectangle corner") {
    const std::vector<cmac::WeightPair> grid = {{0.2, 0.8}, {0.5, 0.5}, {0.8, 0.2}};
    const auto pts = cmac::region_boundary(evs_single(), {1, 1}, grid);
    REQUIRE(pts.size() == 3);
    for (const auto& pt : pts) {
      CHECK(std::abs(pt.r1 - 1.0) <= 1e-6);
      CHECK(std::abs(pt.r2 - 1.0) <= 1e-6);
    }
  }
  SUBCASE("equal weights match the sum capacity") {
    const auto pts = cmac::region_boundary(us_two_state(), {1, 1}, {{1, 1}});
    CHECK(std::abs(pts[0].r1 + pts[0].r2 - cmac::sum_capacity(us_two_state(), {1, 1}).value) <= 1e-6);
  }
  SUBCASE("symmetric channel gives mirrored pairs") {
    const auto p = make_discrete_channel({{{1, 0.5, 0.5, 1}, 0.5}, {{2, 1.5, 1.5, 2}, 0.5}});
    const auto pts = cmac::region_boundary(p, {1, 1}, {{2, 1}, {1, 2}});
    // Sorted by mu1 / mu2: (1,2) first.
    CHECK(std::abs(pts[0].r1 - pts[1].r2) <= 1e-6);
    CHECK(std::abs(pts[0].r2 - pts[1].r1) <= 1e-6);
    CHECK(pts[0].r1 <= pts[1].r1 + 1e-9);
  }
  CHECK_THROWS_AS((cmac::region_boundary(evs_single(), {1, 1}, {})), InvalidInput);
}
