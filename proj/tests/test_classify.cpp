#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "ergoifc/classify.hpp"

using namespace ergoifc;

TEST_CASE("classify_state") {
  CHECK(classify_state({1, 4, 4, 1}) == StateLabel::Strong);
  CHECK(classify_state({1, 0.25, 0.25, 1}) == StateLabel::Weak);
  CHECK(classify_state({1, 4, 0, 1}) == StateLabel::OneSidedStrong);
  CHECK(classify_state({1, 0.5, 0, 1}) == StateLabel::OneSidedWeak);
  CHECK(classify_state({1, 0, 0.5, 1}) == StateLabel::OneSidedWeak);
  CHECK(classify_state({1, 0, 0, 1}) == StateLabel::Degenerate);
  CHECK(classify_state({1, 4, 0.25, 1}) == StateLabel::Mixed);
  // Equality counts as strong.
  CHECK(classify_state({1, 1, 1, 1}) == StateLabel::Strong);
}

TEST_CASE("strong/weak is invariant to a common scale on one side") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.01, 5.0);
  for (int t = 0; t < 200; ++t) {
    const FadingState s{u(rng), u(rng), u(rng), u(rng)};
    const double k = u(rng);
    const FadingState scaled{s.g11 * k, s.g12, s.g21 * k, s.g22};
    CHECK(strong_at(s, 2) == strong_at(scaled, 2));
  }
}

TEST_CASE("evs_condition examples") {
  const auto a = evs_condition(make_discrete_channel({{{1, 4, 4, 1}, 1.0}}), {1, 1});
  CHECK(std::abs(a.lhs - 2.0) <= 1e-12);
  CHECK(std::abs(a.rhs - std::log2(6.0)) <= 1e-12);
  CHECK(a.holds);

  const auto b = evs_condition(make_discrete_channel({{{1, 9, 9, 1}, 0.5}, {{1, 0.25, 0.25, 1}, 0.5}}), {1, 1});
  CHECK(std::abs(b.lhs - 2.0) <= 1e-12);
  CHECK(std::abs(b.rhs - 0.5 * (std::log2(11.0) + std::log2(2.25))) <= 1e-12);
  CHECK(std::abs(b.rhs - 2.3147) <= 1e-4);
  CHECK(b.holds);

  const auto c = evs_condition(make_discrete_channel({{{1, 1.1025, 1.1025, 1}, 1.0}}), {1, 1});
  CHECK(std::abs(c.rhs - std::log2(3.1025)) <= 1e-12);
  CHECK_FALSE(c.holds);
}

TEST_CASE("single-state EVS agrees with the per-state very strong inequalities") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.05, 8.0);
  for (int t = 0; t < 500; ++t) {
    const FadingState s{u(rng), u(rng), u(rng), u(rng)};
    const PowerBudget b{u(rng) / 2, u(rng) / 2};
    const bool direct = s.g21 > s.g11 * (1 + s.g22 * b.p2) && s.g12 > s.g22 * (1 + s.g11 * b.p1);
    const auto r = evs_condition(make_discrete_channel({{s, 1.0}}), b);
    if (std::abs(r.lhs - r.rhs) > 1e-9) CHECK(r.holds == direct);
  }
}

TEST_CASE("classify_channel sub-classes") {
  SUBCASE("EVS takes precedence") {
    const auto r = classify_channel(make_discrete_channel({{{1, 4, 4, 1}, 1.0}}), {1, 1});
    CHECK(r.subclass == Subclass::EVS);
    CHECK(r.evs.holds);
  }
  SUBCASE("uniformly strong") {
    const auto r = classify_channel(make_discrete_channel({{{1, 1.1025, 1.1025, 1}, 1.0}}), {1, 1});
    CHECK(r.subclass == Subclass::US);
    CHECK_FALSE(r.evs.holds);
  }
  SUBCASE("all-strong channel that also meets the EVS condition is EVS") {
    const auto r = classify_channel(
        make_discrete_channel({{{1, 1.1025, 6.25, 1}, 0.5}, {{1, 6.25, 1.1025, 1}, 0.5}}), {1, 1});
    CHECK(r.subclass == Subclass::EVS);
    for (auto l : r.labels) CHECK(l == StateLabel::Strong);
  }
  SUBCASE("uniformly weak") {
    const auto r = classify_channel(make_discrete_channel({{{1, 0.25, 0.25, 1}, 1.0}}), {1, 1});
    CHECK(r.subclass == Subclass::UW);
  }
  SUBCASE("uniformly mixed, both orientations") {
    CHECK(classify_channel(make_discrete_channel({{{1, 4, 0.25, 1}, 1.0}}), {1, 1}).subclass == Subclass::UM);
    CHECK(classify_channel(make_discrete_channel({{{1, 0.25, 4, 1}, 1.0}}), {1, 1}).subclass == Subclass::UM);
  }
  SUBCASE("hybrid") {
    const auto r = classify_channel(make_discrete_channel({{{1, 0.25, 0.25, 1}, 0.5}, {{1, 1.5, 1.5, 1}, 0.5}}), {1, 1});
    CHECK_FALSE(r.evs.holds);
    CHECK(r.subclass == Subclass::Hybrid);
  }
  SUBCASE("one-sided variants") {
    const auto uw = classify_channel(make_discrete_channel({{{1, 0.25, 0, 1}, 0.5}, {{1, 0.5, 0, 1}, 0.5}}), {1, 1});
    CHECK(uw.subclass == Subclass::OneSidedUW);
    CHECK(uw.sidedness == Sidedness::OneSidedAtRx1);
    const auto evs = classify_channel(make_discrete_channel({{{1, 4, 0, 1}, 1.0}}), {1, 1});
    CHECK(evs.subclass == Subclass::OneSidedEVS);
    CHECK(std::isfinite(evs.evs.rhs));
    const auto us = classify_channel(make_discrete_channel({{{1, 0, 1.2, 1}, 1.0}}), {1, 1});
    CHECK(us.subclass == Subclass::OneSidedUS);
    CHECK(us.sidedness == Sidedness::OneSidedAtRx2);
    const auto hyb = classify_channel(make_discrete_channel({{{1, 0.5, 0, 1}, 0.5}, {{1, 2.0, 0, 1}, 0.5}}), {3, 3});
    CHECK(hyb.subclass == Subclass::OneSidedHybrid);
  }
}

TEST_CASE("noisy interference condition") {
  const auto p = make_discrete_channel({{{1, 0.04, 0.04, 1}, 1.0}});
  const auto a = noisy_interference_condition(p, {{1, 1}});
  CHECK(a.holds);
  const auto q = make_discrete_channel({{{1, 0.81, 0.81, 1}, 1.0}});
  CHECK_FALSE(noisy_interference_condition(q, {{1, 1}}).holds);
  const auto z = make_discrete_channel({{{1, 0, 0, 1}, 1.0}});
  CHECK(noisy_interference_condition(z, {{1, 1}}).holds);
}
