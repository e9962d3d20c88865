// Acceptance suite: one checked criterion per test case, one printed
// verdict line per criterion.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include "ghspace/constructions.hpp"
#include "ghspace/core.hpp"
#include "ghspace/family.hpp"
#include "ghspace/gh.hpp"
#include "ghspace/pointed.hpp"
#include "ghspace/random.hpp"
#include "ghspace/spider.hpp"

using namespace ghspace;

namespace {

constexpr std::uint64_t kSeed = 20250811;
constexpr double kInf = std::numeric_limits<double>::infinity();

void report(int idx, const std::string& name, bool ok,
            const std::string& detail = "") {
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << idx << ": "
            << name;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

TEST_CASE("1: lipschitz suite") {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t failures = 0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    auto rng = trial_rng(kSeed, t);
    auto a = random_spider_params(rng, 8);
    auto b = random_spider_params(rng, 8);
    auto gap = lipschitz_gap(a, b, 32);
    if (!(gap.lhs <= gap.rhs + 1e-12)) ++failures;
  }
  const double elapsed = seconds_since(t0);
  const bool ok = failures == 0 && elapsed < 60.0;
  std::ostringstream d;
  d << "1000 pairs, N=8, grid=32, " << failures << " violations, "
    << elapsed << " s";
  report(1, "uniform distance within 2*tau on every pair", ok, d.str());
  CHECK(ok);
}

TEST_CASE("2: fingerprint round-trip and separation") {
  std::size_t roundtrip_failures = 0, separation_failures = 0, checked = 0;
  for (std::uint64_t t = 0; t < 500; ++t) {
    auto rng = trial_rng(kSeed + 1, t);
    std::uniform_int_distribution<std::size_t> legs_d(1, 10), grid_d(4, 16);
    std::uniform_real_distribution<double> scale_d(0.5, 4.0);
    const std::size_t legs = legs_d(rng);
    const std::size_t grid = grid_d(rng);
    const double K = scale_d(rng);
    auto a = random_spider_params(rng, legs);

    auto fp = fingerprint(build_spider(a, grid, K).space);
    bool ok = std::abs(fp.K - K) <= 1e-9 * K && fp.a.size() == legs;
    for (std::size_t i = 0; ok && i < legs; ++i)
      ok = std::abs(fp.a[i] - a.a[i]) <= 1e-9 * a.a[i];
    if (!ok) ++roundtrip_failures;

    auto b = random_spider_params(rng, legs);
    if (tau(a, b) >= 1e-6) {
      ++checked;
      auto fb = fingerprint(build_spider(b, grid, K).space);
      double sep = std::abs(fp.K - fb.K);
      for (std::size_t i = 0; i < legs; ++i)
        sep = std::max(sep, std::abs(fp.a[i] - fb.a[i]));
      if (!(sep >= 1e-7)) ++separation_failures;
    }
  }
  const bool ok = roundtrip_failures == 0 && separation_failures == 0;
  std::ostringstream d;
  d << "500 round-trips (" << roundtrip_failures << " failed), " << checked
    << " separation pairs (" << separation_failures << " failed)";
  report(2, "fingerprint recovers (K, a) and separates parameters", ok,
         d.str());
  CHECK(ok);
}

TEST_CASE("3: GH oracle suite") {
  std::size_t failures = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    auto rng = trial_rng(kSeed + 2, t);
    std::uniform_int_distribution<std::size_t> size_d(2, 5);
    auto X = random_point_cloud(rng, size_d(rng), 2, 2.0, "x");
    auto Y = (t % 2) ? random_metric(rng, size_d(rng), 1.2, 1.8, "y")
                     : random_point_cloud(rng, size_d(rng), 3, 1.5, "y");
    const auto ex = gh_exact(X, Y);
    bool ok = gh_exact(Y, X).value == ex.value;
    ok = ok && gh_lower_diam(X, Y) <= ex.value;
    ok = ok && ex.value <= gh_upper_greedy(X, Y).value;
    if (!ok) ++failures;
  }
  std::size_t triangle_failures = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    auto rng = trial_rng(kSeed + 3, t);
    std::uniform_int_distribution<std::size_t> size_d(2, 5);
    auto A = random_point_cloud(rng, size_d(rng), 2, 2.0, "a");
    auto B = random_metric(rng, size_d(rng), 1.2, 1.8, "b");
    auto C = random_point_cloud(rng, size_d(rng), 3, 1.0, "c");
    if (!(gh_exact(A, C).value <=
          gh_exact(A, B).value + gh_exact(B, C).value + 1e-12))
      ++triangle_failures;
  }
  std::size_t point_failures = 0;
  const auto point = MetricSpace({"pt"}, {0.0});
  for (std::uint64_t t = 0; t < 50; ++t) {
    auto rng = trial_rng(kSeed + 4, t);
    std::uniform_int_distribution<std::size_t> size_d(2, 5);
    auto X = random_point_cloud(rng, size_d(rng), 2, 2.0);
    if (gh_exact(point, X).value != X.diameter() / 2.0) ++point_failures;
  }
  const bool ok =
      failures == 0 && triangle_failures == 0 && point_failures == 0;
  std::ostringstream d;
  d << "200 pairs (" << failures << " failed), 100 triples ("
    << triangle_failures << " failed), 50 singleton rules ("
    << point_failures << " failed)";
  report(3, "exact solver symmetry, triangle, and bound sandwich", ok,
         d.str());
  CHECK(ok);
}

TEST_CASE("4: perturbation bound") {
  std::size_t failures = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    auto rng = trial_rng(kSeed + 5, t);
    std::uniform_int_distribution<std::size_t> size_d(2, 5);
    std::uniform_real_distribution<double> delta_d(0.01, 0.19);
    auto d = random_metric(rng, size_d(rng));
    auto e = perturbed_metric(rng, d, delta_d(rng));
    if (!(gh_exact(d, e).value <= uniform_distance(d, e) / 2.0)) ++failures;
  }
  std::ostringstream d;
  d << "200 trials, " << failures << " violations";
  report(4, "exact GH within half the uniform distance", failures == 0,
         d.str());
  CHECK(failures == 0);
}

TEST_CASE("5: anchor recovery") {
  auto cfg = default_family_config();
  std::size_t failures = 0;
  for (std::size_t i = 0; i < cfg.anchors.size(); ++i)
    for (std::size_t k = 1; k <= cfg.branches(); ++k) {
      auto D = build_D(cfg.anchor_points[i], k, cfg);
      auto q = quotient(D.space);
      const bool ok = q.space.size() == cfg.anchors[i].size() &&
                      gh_exact(q.space, cfg.anchors[i]).value == 0.0;
      if (!ok) ++failures;
    }
  std::ostringstream d;
  d << cfg.anchors.size() << " anchors x " << cfg.branches() << " branches, "
    << failures << " failed";
  report(5, "quotient at anchors is GH-0 from the anchor space",
         failures == 0, d.str());
  CHECK(failures == 0);
}

TEST_CASE("6: metric dichotomy, injectivity sweep, branch selection") {
  auto cfg = default_family_config();  // 16x16 grid
  REQUIRE(cfg.grid == 16);

  auto sel = select_branch(cfg);
  const bool branch_ok = sel.k >= 1 && sel.k <= cfg.branches();

  // At anchors every branch collapses, so strict metricity must fail while
  // the pseudo-metric axioms hold.
  bool anchors_ok = true;
  for (std::size_t i = 0; i < cfg.anchors.size(); ++i)
    for (std::size_t k = 1; k <= cfg.branches(); ++k) {
      auto D = build_D(cfg.anchor_points[i], k, cfg);
      anchors_ok =
          anchors_ok &&
          !validate(D.space,
                    {.require_metric = true, .tri_tol = kComputedTriTol})
               .valid() &&
          validate(D.space,
                   {.require_metric = false, .tri_tol = kComputedTriTol})
              .valid();
    }

  auto rep = injectivity_sweep(cfg, cfg.grid, sel.k);
  const bool sweep_ok = rep.metric_failures == 0 &&
                        rep.rows.size() == cfg.grid * cfg.grid - 3 &&
                        rep.min_separation > 0.0;

  const bool ok = branch_ok && anchors_ok && sweep_ok;
  std::ostringstream d;
  d << "k=" << sel.k << ", " << rep.rows.size()
    << " off-anchor points all strict metrics, min fingerprint sep "
    << rep.min_separation;
  report(6, "strict metric exactly off anchors; injective fingerprints", ok,
         d.str());
  CHECK(ok);
}

TEST_CASE("7: continuity modulus halves with the mesh") {
  auto cfg = default_family_config();
  const double coarse = max_edge_bound(cfg, 16, 1);  // mesh 1/15
  const double fine = max_edge_bound(cfg, 31, 1);    // mesh 1/30
  const double ratio = coarse / fine;
  const bool ok = ratio >= 1.6 && ratio <= 2.4;
  std::ostringstream d;
  d << "max edge bound " << coarse << " -> " << fine << ", ratio " << ratio;
  report(7, "per-edge bound scales linearly in the mesh", ok, d.str());
  CHECK(ok);
}

TEST_CASE("8: admissible gluing suite") {
  std::size_t failures = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    auto rng = trial_rng(kSeed + 6, t);
    std::uniform_int_distribution<std::size_t> n_d(4, 20);
    std::uniform_real_distribution<double> delta_d(0.01, 0.15);
    auto tr = random_rough_isometry(rng, n_d(rng), delta_d(rng), t % 2 == 0);
    bool ok = tr.cert.verdict;
    if (ok) {
      auto h = glue_from_rough_isometry(tr.cert, tr.X, tr.Y);
      const double bound =
          std::max(2 * tr.cert.eps,
                   tr.cert.R == kInf ? 0.0 : 1.0 / (tr.cert.R - tr.cert.eps));
      ok = check_admissible(h, tr.X, tr.Y, bound + 1e-9).admissible;
    }
    if (!ok) ++failures;
  }
  std::ostringstream d;
  d << "100 certified gluings, " << failures << " inadmissible";
  report(8, "certified rough isometries glue admissibly at the bound",
         failures == 0, d.str());
  CHECK(failures == 0);
}

TEST_CASE("9: product and projection bounds") {
  std::size_t case1_failures = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    auto rng = trial_rng(kSeed + 7, t);
    std::uniform_int_distribution<std::size_t> n_d(2, 4);
    const std::size_t nf = 2 + t % 2;
    std::vector<FactorMap> factors;
    double eps = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < nf; ++i) {
      auto tr = random_rough_isometry(rng, n_d(rng), 0.02 + 0.02 * i, false);
      ok = ok && tr.cert.verdict;
      eps = std::max(eps, tr.cert.eps);
      factors.push_back({tr.X, tr.Y, tr.cert.map});
    }
    if (ok) {
      auto prod = product_rough_isometry(factors, eps);
      ok = prod.cert.verdict;
      const double slack = std::sqrt(static_cast<double>(nf)) * eps;
      const auto& PX = prod.domain.space;
      const auto& PY = prod.target.space;
      for (std::size_t i = 0; ok && i < PX.size(); ++i)
        for (std::size_t j = 0; ok && j < PX.size(); ++j)
          ok = std::abs(PX(i, j) - PY(prod.map[i], prod.map[j])) <=
               slack + 1e-12;
    }
    if (!ok) ++case1_failures;
  }

  std::size_t case2_failures = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    auto rng = trial_rng(kSeed + 8, t);
    std::uniform_real_distribution<double> eps_d(0.05, 0.3);
    const double eps = eps_d(rng);
    const std::size_t nf = 2 + t % 2;
    const std::size_t keep = t % nf;
    std::vector<PointedSpace> spaces;
    std::vector<double> radii;
    for (std::size_t i = 0; i < nf; ++i) {
      auto S = random_point_cloud(rng, 5, 2, i == keep ? 2.0 : 1.5 * eps,
                                  "f" + std::to_string(i));
      spaces.push_back({std::move(S), 0});
      radii.push_back(i == keep ? kInf : eps);
    }
    auto proj = projection_rough_isometry(spaces, radii, keep, 1.0, eps);
    bool ok = proj.cert.verdict;
    const double slack = 2.0 * std::sqrt(static_cast<double>(nf - 1)) * eps;
    const auto& P = proj.product.space;
    const auto& Xi = spaces[keep].space;
    for (std::size_t i = 0; ok && i < P.size(); ++i)
      for (std::size_t j = 0; ok && j < P.size(); ++j)
        ok = std::abs(P(i, j) - Xi(proj.map[i], proj.map[j])) <=
             slack + 1e-12;
    if (!ok) ++case2_failures;
  }

  const bool ok = case1_failures == 0 && case2_failures == 0;
  std::ostringstream d;
  d << "100 product trials (" << case1_failures << " failed), "
    << "100 projection trials (" << case2_failures << " failed)";
  report(9, "sqrt(n+1) product and 2 sqrt(n) projection slacks hold", ok,
         d.str());
  CHECK(ok);
}

TEST_CASE("10: sine-curve demo") {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> uppers;
  for (std::size_t n = 1; n <= 6; ++n)
    uppers.push_back(
        gh_upper_greedy(sine_curve(n, 128), sine_curve(n + 3, 128)).value);
  const double elapsed = seconds_since(t0);

  bool monotone = true;
  for (std::size_t i = 1; i < uppers.size(); ++i)
    if (uppers[i] > uppers[i - 1]) monotone = false;
  const bool ok = monotone && elapsed < 30.0;

  std::ostringstream d;
  d << "bounds";
  for (double u : uppers) d << " " << u;
  d << ", " << elapsed << " s";
  report(10, "greedy bound non-increasing along the sine family", ok,
         d.str());
  CHECK(ok);
}
