#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "ghspace/constructions.hpp"
#include "ghspace/core.hpp"
#include "ghspace/random.hpp"

using namespace ghspace;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

MetricSpace unit_path3(const std::string& prefix) {
  return MetricSpace::from_rows(
      {prefix + "0", prefix + "1", prefix + "2"},
      {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
}

MetricSpace one_point(const std::string& l) {
  return MetricSpace({l}, {0.0});
}

}  // namespace

TEST_CASE("glue sums cross distances through the wedge") {
  auto X = MetricSpace::from_rows({"p", "x"}, {{0, 1}, {1, 0}});
  auto Y = MetricSpace::from_rows({"q", "y"}, {{0, 2}, {2, 0}});
  auto h = glue(X, Y, "p", "q");
  REQUIRE(h.size() == 3);
  CHECK(h(h.index_of("x"), h.index_of("y")) == 3.0);
  CHECK(h(h.index_of("p"), h.index_of("y")) == 2.0);
  CHECK(validate(h, {.require_metric = true}).valid());
}

TEST_CASE("glue with a one-point space is an isometric copy") {
  auto X = unit_path3("a");
  auto h = glue(X, one_point("z"), "a2", "z");
  REQUIRE(h.size() == X.size());
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t j = 0; j < X.size(); ++j) CHECK(h(i, j) == X(i, j));
}

TEST_CASE("glue of two paths matches the shortest-path oracle") {
  auto h = glue(unit_path3("a"), unit_path3("b"), "a2", "b0");
  REQUIRE(h.size() == 5);

  // Independent oracle: closure of the 5-cycle-free edge graph.
  const double far = 100.0;
  std::vector<double> g(25, far);
  for (int i = 0; i < 5; ++i) g[i * 5 + i] = 0.0;
  for (int i = 0; i + 1 < 5; ++i) g[i * 5 + (i + 1)] = g[(i + 1) * 5 + i] = 1.0;
  auto oracle = shortest_path_closure(MetricSpace(h.labels(), std::move(g)));

  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(h(i, j) == oracle(i, j));
}

TEST_CASE("glue requires the wedge labels") {
  auto X = unit_path3("a");
  CHECK_THROWS_AS(glue(X, X, "a0", "nope"), std::invalid_argument);
  CHECK_THROWS_AS(glue(X, X, "nope", "a0"), std::invalid_argument);
}

TEST_CASE("glue restrictions are entrywise exact on random inputs") {
  auto rng = trial_rng(23, 0);
  for (int t = 0; t < 30; ++t) {
    auto X = random_metric(rng, 5, 1.2, 1.8, "x");
    auto Y = random_point_cloud(rng, 4, 2, 1.0, "y");
    auto h = glue(X, Y, "x2", "y1");
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) CHECK(h(i, j) == X(i, j));
    // Y block: points other than the wedge follow in order.
    std::vector<std::size_t> yz;
    for (std::size_t j = 0; j < 4; ++j)
      if (j != 1) yz.push_back(h.index_of(Y.label(j)));
    std::vector<std::size_t> yo = {0, 2, 3};
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b)
        CHECK(h(yz[a], yz[b]) == Y(yo[a], yo[b]));
    CHECK(validate(h, {.require_metric = true}).valid());
  }
}

TEST_CASE("l2_product of unit segments is a unit square") {
  auto seg = MetricSpace::from_rows({"0", "1"}, {{0, 1}, {1, 0}});
  auto sq = l2_product(seg, seg);
  REQUIRE(sq.size() == 4);
  CHECK(sq(sq.index_of("(0,0)"), sq.index_of("(0,1)")) == 1.0);
  CHECK(sq(sq.index_of("(0,0)"), sq.index_of("(1,0)")) == 1.0);
  CHECK(sq(sq.index_of("(0,0)"), sq.index_of("(1,1)")) == std::sqrt(2.0));
}

TEST_CASE("l2_product with a point copies the other factor") {
  auto X = unit_path3("a");
  auto p = l2_product(X, one_point("z"));
  REQUIRE(p.size() == X.size());
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t j = 0; j < X.size(); ++j) CHECK(p(i, j) == X(i, j));
}

TEST_CASE("l2_product hypotenuse") {
  auto a = MetricSpace::from_rows({"0", "1"}, {{0, 3}, {3, 0}});
  auto b = MetricSpace::from_rows({"0", "1"}, {{0, 4}, {4, 0}});
  auto p = l2_product(a, b);
  CHECK(p(p.index_of("(0,0)"), p.index_of("(1,1)")) == 5.0);
}

TEST_CASE("l2_product satisfies the metric axioms and the diameter identity") {
  auto rng = trial_rng(29, 0);
  for (int t = 0; t < 20; ++t) {
    auto X = random_point_cloud(rng, 4, 2, 1.5, "x");
    auto Y = random_metric(rng, 3, 1.2, 1.8, "y");
    auto p = l2_product(X, Y);
    CHECK(validate(p, {.require_metric = true, .tri_tol = kComputedTriTol})
              .valid());
    const double want =
        std::sqrt(X.diameter() * X.diameter() + Y.diameter() * Y.diameter());
    CHECK(p.diameter() == doctest::Approx(want).epsilon(1e-14));
  }
}

TEST_CASE("l2_product_many matches nested products entrywise") {
  auto rng = trial_rng(31, 0);
  auto A = random_metric(rng, 3, 1.2, 1.8, "a");
  auto B = random_metric(rng, 2, 1.2, 1.8, "b");
  auto C = random_metric(rng, 2, 1.2, 1.8, "c");
  auto flat = l2_product_many({A, B, C});
  auto nested = l2_product(l2_product(A, B), C);
  REQUIRE(flat.size() == nested.size());
  for (std::size_t i = 0; i < flat.size(); ++i)
    for (std::size_t j = 0; j < flat.size(); ++j)
      CHECK(flat(i, j) == doctest::Approx(nested(i, j)).epsilon(1e-14));
}

TEST_CASE("scale basics and round-trip") {
  auto X = unit_path3("a");
  auto same = scale(1.0, X);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(same(i, j) == X(i, j));

  auto twice = scale(2.0, MetricSpace::from_rows({"a", "b"}, {{0, 1}, {1, 0}}));
  CHECK(twice(0, 1) == 2.0);

  CHECK_THROWS_AS(scale(0.0, X), std::invalid_argument);
  CHECK_THROWS_AS(scale(-1.0, X), std::invalid_argument);

  auto rng = trial_rng(37, 0);
  for (int t = 0; t < 20; ++t) {
    auto Y = random_point_cloud(rng, 5, 3, 2.0);
    const double L = 0.3 + 0.1 * t;
    auto back = scale(L, scale(1.0 / L, Y));
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) {
        const double a = Y(i, j), b = back(i, j);
        const double ulp =
            std::nextafter(std::abs(a), kInf) - std::abs(a);
        CHECK(std::abs(a - b) <= ulp);
      }
  }
}

TEST_CASE("ball_restrict radii") {
  auto X = unit_path3("a");
  CHECK(ball_restrict(X, "a0", 0.0).size() == 1);
  CHECK(ball_restrict(X, "a0", kInf).size() == 3);
  CHECK(ball_restrict(X, "a0", 1.0).size() == 2);  // a0 and a1
  CHECK_THROWS_AS(ball_restrict(X, "zz", 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ball_restrict(X, "a0", -1.0), std::invalid_argument);
}

TEST_CASE("ball_restrict is monotone in the radius") {
  auto rng = trial_rng(41, 0);
  for (int t = 0; t < 20; ++t) {
    auto X = random_point_cloud(rng, 8, 2, 2.0);
    std::uniform_real_distribution<double> u(0.0, 2.5);
    double r1 = u(rng), r2 = u(rng);
    if (r1 > r2) std::swap(r1, r2);
    auto small = ball_restrict(X, "p0", r1);
    auto large = ball_restrict(X, "p0", r2);
    for (const auto& l : small.labels()) CHECK(large.has_label(l));
  }
}
