#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ghspace/core.hpp"
#include "ghspace/gh.hpp"
#include "ghspace/io.hpp"
#include "ghspace/random.hpp"
#include "ghspace/spider.hpp"

using namespace ghspace;

namespace {

SpiderParams lower_endpoints(std::size_t n) {
  SpiderParams p;
  for (std::size_t i = 1; i <= n; ++i) p.a.push_back(SpiderParams::coord_min(i));
  return p;
}

SpiderParams upper_endpoints(std::size_t n) {
  SpiderParams p;
  for (std::size_t i = 1; i <= n; ++i) p.a.push_back(SpiderParams::coord_max(i));
  return p;
}

}  // namespace

TEST_CASE("tau basics") {
  auto a = lower_endpoints(3);
  CHECK(tau(a, a) == 0.0);

  // Interval widths are 2^(-2i), maximal at i = 1.
  CHECK(tau(lower_endpoints(3), upper_endpoints(3)) == 0.25);

  auto b = a;
  b.a[1] += 0.01;
  CHECK(tau(a, b) == doctest::Approx(0.01).epsilon(1e-12));

  CHECK_THROWS_AS(tau(a, lower_endpoints(2)), std::invalid_argument);
}

TEST_CASE("parameter cube membership") {
  CHECK(lower_endpoints(5).valid());
  CHECK(upper_endpoints(5).valid());
  SpiderParams bad;
  bad.a = {0.6};  // above 2^-1
  CHECK_FALSE(bad.valid());
  auto rng = trial_rng(97, 0);
  for (int t = 0; t < 10; ++t) CHECK(random_spider_params(rng, 8).valid());
}

TEST_CASE("build_spider distances follow the radial formula") {
  auto rng = trial_rng(101, 0);
  auto p = random_spider_params(rng, 4);
  const double K = 2.0;
  auto sp = build_spider(p, 8, K);
  REQUIRE(sp.space.size() == 5 * 8 + 1);
  REQUIRE(sp.layout.nodes.size() == sp.space.size());

  const auto& S = sp.space;
  // center to the tip of leg 0: K * a_0 * 1 = K
  CHECK(S(S.index_of("c"), S.index_of("l0s8")) == K);
  // across legs 1 and 2 at the tips: K * (a_1 + a_2)
  CHECK(S(S.index_of("l1s8"), S.index_of("l2s8")) ==
        doctest::Approx(K * (p.a[0] + p.a[1])).epsilon(1e-15));
  // same leg: s = 2/8, t = 6/8 -> K * a_i * 0.5
  CHECK(S(S.index_of("l1s2"), S.index_of("l1s6")) ==
        doctest::Approx(K * p.a[0] * 0.5).epsilon(1e-15));

  // every entry agrees with the layout evaluation
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = 0; j < S.size(); ++j)
      CHECK(S(i, j) ==
            K * spider_distance(p, sp.layout.nodes[i], sp.layout.nodes[j]));

  CHECK(validate(S, {.require_metric = true, .tri_tol = kComputedTriTol})
            .valid());
}

TEST_CASE("build_spider rejects bad input") {
  SpiderParams bad;
  bad.a = {0.9};
  CHECK_THROWS_AS(build_spider(bad, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_spider(lower_endpoints(2), 0), std::invalid_argument);
  CHECK_THROWS_AS(build_spider(lower_endpoints(2), 4, 0.0),
                  std::invalid_argument);
}

TEST_CASE("fingerprint round-trips build_spider") {
  auto rng = trial_rng(103, 0);
  for (int t = 0; t < 25; ++t) {
    const std::size_t legs = 1 + t % 10;
    auto p = random_spider_params(rng, legs);
    const double K = t % 2 ? 1.0 : 2.5;
    auto fp = fingerprint(build_spider(p, 8, K).space);
    CHECK(std::abs(fp.K - K) <= 1e-9 * K);
    REQUIRE(fp.a.size() == legs);
    for (std::size_t i = 0; i < legs; ++i)
      CHECK(std::abs(fp.a[i] - p.a[i]) <= 1e-9 * p.a[i]);
  }
}

TEST_CASE("fingerprint of a single leg is (K, empty)") {
  SpiderParams none;
  auto fp = fingerprint(build_spider(none, 6, 3.0).space);
  CHECK(fp.K == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fp.a.empty());
}

TEST_CASE("fingerprint separates distinct parameters") {
  auto rng = trial_rng(107, 0);
  for (int t = 0; t < 20; ++t) {
    auto a = random_spider_params(rng, 6);
    auto b = random_spider_params(rng, 6);
    if (tau(a, b) < 1e-6) continue;
    auto fa = fingerprint(build_spider(a, 8).space);
    auto fb = fingerprint(build_spider(b, 8).space);
    double sep = std::abs(fa.K - fb.K);
    for (std::size_t i = 0; i < 6; ++i)
      sep = std::max(sep, std::abs(fa.a[i] - fb.a[i]));
    CHECK(sep >= 1e-7);
  }
}

TEST_CASE("fingerprint rejects ambiguous structure") {
  // Two equal-scale legs make the second tip choice ambiguous.
  SpiderParams twin;
  twin.a = {0.3, 0.3};
  SpiderLayout layout;
  layout.nodes.push_back({0, 0.0});
  for (std::size_t leg = 0; leg <= 2; ++leg)
    for (std::size_t k = 1; k <= 2; ++k)
      layout.nodes.push_back({leg, k / 2.0});
  const std::size_t n = layout.nodes.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d[i * n + j] = spider_distance(twin, layout.nodes[i], layout.nodes[j]);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));

  CHECK_THROWS_AS(fingerprint(MetricSpace(labels, d)), RecoveryError);

  // A plain 4-cycle has no geodesic hub at all.
  auto square = MetricSpace::from_rows(
      {"a", "b", "c", "d"},
      {{0, 1, std::sqrt(2.0), 1},
       {1, 0, 1, std::sqrt(2.0)},
       {std::sqrt(2.0), 1, 0, 1},
       {1, std::sqrt(2.0), 1, 0}});
  CHECK_THROWS_AS(fingerprint(square), RecoveryError);
}

TEST_CASE("fingerprint names the stage for uneven leg grids") {
  // Legs sampled at different resolutions are not a shared grid.
  SpiderParams p;
  p.a = {0.3, 0.1};
  SpiderLayout layout;
  layout.nodes.push_back({0, 0.0});
  for (std::size_t k = 1; k <= 2; ++k) layout.nodes.push_back({0, k / 2.0});
  for (std::size_t k = 1; k <= 3; ++k) layout.nodes.push_back({1, k / 3.0});
  for (std::size_t k = 1; k <= 2; ++k) layout.nodes.push_back({2, k / 2.0});
  const std::size_t n = layout.nodes.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d[i * n + j] = spider_distance(p, layout.nodes[i], layout.nodes[j]);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));

  try {
    fingerprint(MetricSpace(labels, d));
    FAIL("expected a recovery error");
  } catch (const RecoveryError& e) {
    CHECK(e.stage() == "legs");
  }
}

TEST_CASE("lipschitz_gap pins both sides") {
  auto a = lower_endpoints(4);
  auto same = lipschitz_gap(a, a, 8);
  CHECK(same.lhs == 0.0);
  CHECK(same.rhs == 0.0);

  // Perturb a single coordinate: the uniform distance is exactly delta
  // (attained center-to-tip on that leg) and the bound is 2 delta.
  const double delta = 0.007;
  auto b = a;
  b.a[2] += delta;
  auto gap = lipschitz_gap(a, b, 8);
  CHECK(gap.lhs == doctest::Approx(delta).epsilon(1e-12));
  CHECK(gap.rhs == doctest::Approx(2.0 * delta).epsilon(1e-12));
  CHECK(gap.lhs <= gap.rhs + 1e-12);

  CHECK_THROWS_AS(lipschitz_gap(a, lower_endpoints(3), 8),
                  std::invalid_argument);
}

TEST_CASE("the 2-tau bound holds on random pairs") {
  auto rng = trial_rng(109, 0);
  for (int t = 0; t < 25; ++t) {
    auto a = random_spider_params(rng, 8);
    auto b = random_spider_params(rng, 8);
    auto gap = lipschitz_gap(a, b, 16);
    CHECK(gap.lhs <= gap.rhs + 1e-12);
  }
}

TEST_CASE("adding a leg moves the spider by at most its scale") {
  auto rng = trial_rng(113, 0);
  for (int t = 0; t < 10; ++t) {
    const std::size_t legs = 2 + t % 6;
    auto longer = random_spider_params(rng, legs + 1);
    auto shorter = longer;
    shorter.a.pop_back();
    const std::size_t grid = 6;
    auto X = build_spider(shorter, grid);
    auto Y = build_spider(longer, grid);

    Correspondence c;
    for (std::size_t i = 0; i < X.space.size(); ++i) c.pairs.emplace_back(i, i);
    for (std::size_t j = X.space.size(); j < Y.space.size(); ++j)
      c.pairs.emplace_back(0, j);  // new leg collapses to the center

    const double bound = distortion(c, X.space, Y.space) / 2.0;
    const double new_scale = longer.a.back();
    CHECK(bound <= new_scale + 1e-15);
    CHECK(new_scale <= std::ldexp(1.0, -2 * static_cast<int>(legs) - 1));
  }
}

TEST_CASE("spider params json round-trip") {
  auto rng = trial_rng(127, 0);
  auto p = random_spider_params(rng, 5);
  auto j = spider_params_to_json(p);
  CHECK(j.at("N") == 5);
  auto back = spider_params_from_json(j);
  CHECK(back.a == p.a);

  auto bad = j;
  bad["N"] = 7;
  CHECK_THROWS_AS(spider_params_from_json(bad), std::invalid_argument);
}
