#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "ergoifc/channel.hpp"
#include "ergoifc/error.hpp"

using namespace ergoifc;

TEST_CASE("make_discrete_channel normalizes and preserves order") {
  const auto one = make_discrete_channel({{{1, 4, 4, 1}, 1.0}});
  CHECK(one.size() == 1);
  CHECK(one.prob(0) == 1.0);

  const auto two = make_discrete_channel({{{1, 2, 3, 4}, 0.5}, {{5, 6, 7, 8}, 0.5}});
  CHECK(two.state(0).g11 == 1.0);
  CHECK(two.state(1).g22 == 8.0);
  CHECK(std::abs(two.prob(0) + two.prob(1) - 1.0) <= 1e-12);
}

TEST_CASE("make_discrete_channel rejects bad probabilities") {
  try {
    make_discrete_channel({{{1, 1, 1, 1}, 0.3}, {{1, 1, 1, 1}, 0.3}});
    FAIL("expected InvalidInput");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("probabilities sum to 0.6") != std::string::npos);
  }
  CHECK_THROWS_AS((make_discrete_channel({})), InvalidInput);
  CHECK_THROWS_AS((make_discrete_channel({{{1, 1, 1, 1}, 0.0}, {{1, 1, 1, 1}, 1.0}})), InvalidInput);
  CHECK_THROWS_AS((make_discrete_channel({{{1, -1, 1, 1}, 1.0}})), InvalidInput);
  CHECK_THROWS_AS((make_discrete_channel({{{1, NAN, 1, 1}, 1.0}})), InvalidInput);
}

TEST_CASE("small rounding in probabilities is renormalized") {
  const auto p = make_discrete_channel({{{1, 1, 1, 1}, 0.5 + 4e-7}, {{1, 1, 1, 1}, 0.5}});
  CHECK(std::abs(p.prob(0) + p.prob(1) - 1.0) <= 1e-12);
}

TEST_CASE("budgets") {
  CHECK_NOTHROW((PowerBudget{0.0, 1.0}.validate()));
  CHECK_THROWS_AS((PowerBudget{-1.0, 1.0}.validate()), InvalidInput);
  CHECK_THROWS_AS((PowerBudget{1.0, INFINITY}.validate()), InvalidInput);
}

TEST_CASE("Rayleigh sampler mean, determinism and degenerate size") {
  const auto p = sample_rayleigh_channel(4.0, {1.0, 1.0}, 20000, 7);
  CHECK(p.size() == 20000);
  double mean = 0.0;
  for (const auto& s : p.states()) mean += s.g12;
  mean /= 20000.0;
  // Exponential: standard deviation equals the mean.
  CHECK(std::abs(mean - 4.0) <= 3.0 * 4.0 / std::sqrt(20000.0));
  for (const auto& s : p.states()) {
    CHECK(s.g11 == 1.0);
    CHECK(s.g22 == 1.0);
  }

  const auto q = sample_rayleigh_channel(4.0, {1.0, 1.0}, 20000, 7);
  bool identical = true;
  for (std::size_t i = 0; i < p.size(); ++i) identical = identical && p.state(i) == q.state(i) && p.prob(i) == q.prob(i);
  CHECK(identical);

  const auto r = sample_rayleigh_channel(4.0, {1.0, 1.0}, 20000, 8);
  CHECK_FALSE(r.state(0) == p.state(0));

  const auto single = sample_rayleigh_channel(1.0, {2.0, 3.0}, 1, 1);
  CHECK(single.size() == 1);
  CHECK(single.prob(0) == 1.0);

  CHECK_THROWS_AS((sample_rayleigh_channel(1.0, {1.0, 1.0}, 0, 1)), InvalidInput);
  CHECK_THROWS_AS((sample_rayleigh_channel(0.0, {1.0, 1.0}, 10, 1)), InvalidInput);
}

TEST_CASE("expect examples and linearity") {
  const auto one = make_discrete_channel({{{1, 1, 1, 1}, 1.0}});
  CHECK(expect(one, [](const FadingState&) { return 3.0; }) == doctest::Approx(3.0));

  const auto two = make_discrete_channel({{{1, 0, 0, 1}, 0.5}, {{4, 0, 0, 1}, 0.5}});
  CHECK(expect(two, [](const FadingState& s) { return s.g11 == 1.0 ? 1.0 : 2.0; }) == doctest::Approx(1.5));
  CHECK(std::abs(expect(two, [](const FadingState& s) { return std::log2(1 + s.g11); }) - 0.5 * (1 + std::log2(5.0))) <=
        1e-12);
  CHECK(std::abs(expect(two, [](const FadingState& s) { return std::log2(1 + s.g11); }) - 1.6610) <= 1e-4);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  const auto p = sample_rayleigh_channel(2.0, {1.0, 1.0}, 50, 11);
  for (int t = 0; t < 20; ++t) {
    const double a = u(rng), b = u(rng), k1 = u(rng), k2 = u(rng);
    auto f = [k1](const FadingState& s) { return std::sin(k1 * s.g12); };
    auto g = [k2](const FadingState& s) { return std::cos(k2 * s.g21); };
    const double lhs = expect(p, [&](const FadingState& s) { return a * f(s) + b * g(s); });
    const double rhs = a * expect(p, f) + b * expect(p, g);
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("validate_policy") {
  const auto two = make_discrete_channel({{{1, 1, 1, 1}, 0.5}, {{1, 1, 1, 1}, 0.5}});
  const auto uni = validate_policy(two, uniform_policy(two, {1, 1}), {1, 1});
  CHECK(uni.feasible());
  CHECK(uni.avg_p1 == doctest::Approx(1.0));
  CHECK(uni.avg_p2 == doctest::Approx(1.0));

  const auto edge = validate_policy(two, {{2, 0}, {0, 0}}, {1, 1});
  CHECK(edge.feasible());
  CHECK(edge.avg_p1 == doctest::Approx(1.0));

  const auto over = validate_policy(two, {{3, 0}, {0, 0}}, {1, 1});
  CHECK_FALSE(over.user1_ok);
  CHECK(over.avg_p1 == doctest::Approx(1.5));

  const auto neg = validate_policy(two, {{-1, 0}, {0, 0}}, {1, 1});
  CHECK(neg.has_negative);
  CHECK_FALSE(neg.feasible());

  CHECK_THROWS_AS((validate_policy(two, {{1, 1}}, {1, 1})), InvalidInput);
}

TEST_CASE("state gain accessor") {
  const FadingState s{1, 2, 3, 4};
  CHECK(s.gain(1, 1) == 1);
  CHECK(s.gain(1, 2) == 2);
  CHECK(s.gain(2, 1) == 3);
  CHECK(s.gain(2, 2) == 4);
}

TEST_CASE("link helpers") {
  const auto p = make_discrete_channel({{{1, 0, 2, 1}, 0.5}, {{1, 0, 3, 1}, 0.5}});
  CHECK(p.link_identically_zero(1, 2));
  CHECK_FALSE(p.link_identically_zero(2, 1));
  const auto l = p.link(2, 1);
  CHECK(l[1].first == 3.0);
  CHECK(l[1].second == doctest::Approx(0.5));
}
