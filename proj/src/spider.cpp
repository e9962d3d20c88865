#include "ghspace/spider.hpp"

#include <algorithm>
#include <cmath>

namespace ghspace {

double SpiderParams::coord_min(std::size_t i) {
  return std::ldexp(1.0, -2 * static_cast<int>(i));
}

double SpiderParams::coord_max(std::size_t i) {
  return std::ldexp(1.0, -2 * static_cast<int>(i) + 1);
}

bool SpiderParams::valid() const {
  for (std::size_t i = 1; i <= a.size(); ++i)
    if (!(a[i - 1] >= coord_min(i) && a[i - 1] <= coord_max(i))) return false;
  return true;
}

double tau(const SpiderParams& x, const SpiderParams& y) {
  if (x.legs() != y.legs())
    throw std::invalid_argument("tau: truncation depths differ");
  double sup = 0.0;
  for (std::size_t i = 0; i < x.a.size(); ++i)
    sup = std::max(sup, std::abs(x.a[i] - y.a[i]));
  return sup;
}

double spider_distance(const SpiderParams& p, SpiderLayout::Node u,
                       SpiderLayout::Node v) {
  // The center is s = 0 on any leg; both formula branches agree there.
  if (u.leg == v.leg) return p.scale_of(u.leg) * std::abs(u.s - v.s);
  return p.scale_of(u.leg) * u.s + p.scale_of(v.leg) * v.s;
}

SpiderSpace build_spider(const SpiderParams& p, std::size_t grid, double K) {
  if (!p.valid())
    throw std::invalid_argument("build_spider: parameters outside the cube");
  if (grid < 1) throw std::invalid_argument("build_spider: grid must be >= 1");
  if (!(K > 0.0)) throw std::invalid_argument("build_spider: K must be > 0");

  SpiderLayout layout;
  std::vector<std::string> labels;
  layout.nodes.push_back({0, 0.0});
  labels.push_back("c");
  for (std::size_t leg = 0; leg <= p.legs(); ++leg)
    for (std::size_t k = 1; k <= grid; ++k) {
      layout.nodes.push_back(
          {leg, static_cast<double>(k) / static_cast<double>(grid)});
      labels.push_back("l" + std::to_string(leg) + "s" + std::to_string(k));
    }

  const std::size_t n = layout.nodes.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = K * spider_distance(p, layout.nodes[i], layout.nodes[j]);
      d[i * n + j] = v;
      d[j * n + i] = v;
    }
  return {MetricSpace(std::move(labels), std::move(d)), std::move(layout)};
}

namespace {

constexpr double kRelTol = 1e-9;  // collinearity / tie tolerance, times scale

// Diameter pair, ties to lowest indices.
std::pair<std::size_t, std::size_t> diameter_pair(const MetricSpace& X) {
  std::size_t bi = 0, bj = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t j = i + 1; j < X.size(); ++j)
      if (X(i, j) > best) {
        best = X(i, j);
        bi = i;
        bj = j;
      }
  return {bi, bj};
}

bool between(const MetricSpace& X, std::size_t y, std::size_t x, std::size_t z,
             double tol) {
  return std::abs(X(y, x) + X(x, z) - X(y, z)) <= tol;
}

}  // namespace

Fingerprint fingerprint(const MetricSpace& X) {
  const std::size_t n = X.size();
  if (n < 2) throw RecoveryError("center", "need at least two points");

  const double scale = X.diameter();
  if (scale <= 0.0)
    throw RecoveryError("center", "all distances are zero");
  const double tol = kRelTol * scale;

  // Single-leg spiders are uniformly spaced paths; both endpoints serve as
  // the center and K is the full length.
  {
    const auto [u, v] = diameter_pair(X);
    bool path = true;
    std::vector<double> pos;
    pos.reserve(n);
    for (std::size_t x = 0; x < n && path; ++x) {
      if (!between(X, u, x, v, tol)) path = false;
      pos.push_back(X(u, x));
    }
    if (path) {
      std::sort(pos.begin(), pos.end());
      double gmin = std::numeric_limits<double>::infinity(), gmax = 0.0;
      for (std::size_t i = 1; i < pos.size(); ++i) {
        gmin = std::min(gmin, pos[i] - pos[i - 1]);
        gmax = std::max(gmax, pos[i] - pos[i - 1]);
      }
      if (gmax - gmin <= tol) return {X(u, v), {}};
      // Non-uniform path: a two-leg spider; fall through to the recursion.
    }
  }

  // Center: the unique point lying on the most geodesics y--x--z. Every
  // cross-leg pair routes through the center, which beats any point that
  // only serves its own leg.
  std::vector<std::size_t> count(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x) continue;
      for (std::size_t z = y + 1; z < n; ++z) {
        if (z == x) continue;
        if (between(X, y, x, z, tol)) ++count[x];
      }
    }
  std::size_t center = 0;
  for (std::size_t x = 1; x < n; ++x)
    if (count[x] > count[center]) center = x;
  for (std::size_t x = 0; x < n; ++x)
    if (x != center && count[x] == count[center])
      throw RecoveryError("center", "two points tie for geodesic coverage");

  // Peel legs tip by tip, farthest from the center first.
  std::vector<std::size_t> remaining;
  for (std::size_t x = 0; x < n; ++x)
    if (x != center) remaining.push_back(x);

  std::vector<double> tip_dist;
  std::size_t leg_size = 0;
  while (!remaining.empty()) {
    std::size_t tip = remaining[0];
    for (std::size_t x : remaining)
      if (X(center, x) > X(center, tip)) tip = x;
    for (std::size_t x : remaining)
      if (x != tip && std::abs(X(center, x) - X(center, tip)) <= tol)
        throw RecoveryError("tips", "two candidate tips at equal distance");

    std::vector<std::size_t> keep;
    std::size_t members = 0;
    for (std::size_t x : remaining) {
      if (x == tip || between(X, center, x, tip, tol))
        ++members;
      else
        keep.push_back(x);
    }
    if (tip_dist.empty())
      leg_size = members;
    else if (members != leg_size)
      throw RecoveryError("legs", "leg sizes differ; not a shared grid");
    tip_dist.push_back(X(center, tip));
    remaining.swap(keep);
  }

  Fingerprint fp;
  fp.K = tip_dist[0];
  for (std::size_t i = 1; i < tip_dist.size(); ++i) {
    if (tip_dist[i] > tip_dist[i - 1] + tol)
      throw RecoveryError("params", "tip distances are not decreasing");
    fp.a.push_back(tip_dist[i] / fp.K);
  }
  return fp;
}

LipschitzGap lipschitz_gap(const SpiderParams& a, const SpiderParams& b,
                           std::size_t grid) {
  if (a.legs() != b.legs())
    throw std::invalid_argument("lipschitz_gap: truncation depths differ");
  const SpiderSpace A = build_spider(a, grid);
  const SpiderSpace B = build_spider(b, grid);
  return {uniform_distance(A.space, B.space), 2.0 * tau(a, b)};
}

}  // namespace ghspace
