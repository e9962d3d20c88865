#include "ghspace/gh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ghspace {

bool Correspondence::covers(std::size_t nx, std::size_t ny) const {
  std::vector<char> cx(nx, 0), cy(ny, 0);
  for (auto [i, j] : pairs) {
    if (i >= nx || j >= ny) return false;
    cx[i] = 1;
    cy[j] = 1;
  }
  return std::find(cx.begin(), cx.end(), 0) == cx.end() &&
         std::find(cy.begin(), cy.end(), 0) == cy.end();
}

Correspondence Correspondence::identity(std::size_t n) {
  Correspondence c;
  c.pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) c.pairs.emplace_back(i, i);
  return c;
}

double hausdorff(const std::vector<std::size_t>& A,
                 const std::vector<std::size_t>& B, const MetricSpace& Z) {
  if (A.empty() || B.empty())
    throw std::invalid_argument("hausdorff: empty subset");
  double h = 0.0;
  for (std::size_t a : A) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t b : B) nearest = std::min(nearest, Z(a, b));
    h = std::max(h, nearest);
  }
  for (std::size_t b : B) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t a : A) nearest = std::min(nearest, Z(a, b));
    h = std::max(h, nearest);
  }
  return h;
}

double distortion(const Correspondence& c, const MetricSpace& X,
                  const MetricSpace& Y) {
  if (!c.covers(X.size(), Y.size()))
    throw std::invalid_argument("distortion: correspondence must cover both sides");
  double dis = 0.0;
  for (std::size_t a = 0; a < c.pairs.size(); ++a)
    for (std::size_t b = a + 1; b < c.pairs.size(); ++b) {
      const auto [i, j] = c.pairs[a];
      const auto [u, v] = c.pairs[b];
      dis = std::max(dis, std::abs(X(i, u) - Y(j, v)));
    }
  return dis;
}

double gh_lower_diam(const MetricSpace& X, const MetricSpace& Y) {
  return std::abs(X.diameter() - Y.diameter()) / 2.0;
}

double gh_upper_same_labels(const MetricSpace& d, const MetricSpace& e) {
  return uniform_distance(d, e) / 2.0;
}

namespace {

// Max-eccentricity start, then farthest-first; ties to the lowest index.
std::vector<std::size_t> farthest_point_order(const MetricSpace& M) {
  const std::size_t n = M.size();
  std::vector<std::size_t> order;
  order.reserve(n);
  std::vector<char> taken(n, 0);
  std::size_t start = 0;
  double bestEcc = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = M.eccentricity(i);
    if (e > bestEcc) {
      bestEcc = e;
      start = i;
    }
  }
  order.push_back(start);
  taken[start] = 1;
  std::vector<double> mind(n, std::numeric_limits<double>::infinity());
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t pick = n;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      mind[i] = std::min(mind[i], M(i, order.back()));
      if (mind[i] > best) {
        best = mind[i];
        pick = i;
      }
    }
    order.push_back(pick);
    taken[pick] = 1;
  }
  return order;
}

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

double pairs_distortion(const Pairs& p, const MetricSpace& X,
                        const MetricSpace& Y) {
  double dis = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b)
      dis = std::max(dis,
                     std::abs(X(p[a].first, p[b].first) -
                              Y(p[a].second, p[b].second)));
  return dis;
}

// Local search that attacks the bottleneck pair: only reassignments touching
// a pair that attains the current distortion can lower it.
class BottleneckSearch {
 public:
  BottleneckSearch(const MetricSpace& X, const MetricSpace& Y, Pairs pairs)
      : X_(X), Y_(Y), pairs_(std::move(pairs)) {}

  Pairs run() {
    double dis = pairs_distortion(pairs_, X_, Y_);
    for (int iter = 0; iter < kMaxIters && dis > 0.0; ++iter) {
      if (!improve(dis)) break;
    }
    return pairs_;
  }

 private:
  static constexpr int kMaxIters = 600;
  static constexpr std::size_t kMaxBottlenecks = 32;

  double contribution(std::size_t t, std::size_t xi, std::size_t yi) const {
    double m = 0.0;
    for (std::size_t u = 0; u < pairs_.size(); ++u) {
      if (u == t) continue;
      m = std::max(m, std::abs(X_(xi, pairs_[u].first) -
                               Y_(yi, pairs_[u].second)));
    }
    return m;
  }

  // Max distortion among pairs other than t.
  double max_excluding(std::size_t t) const {
    double m = 0.0;
    for (std::size_t a = 0; a < pairs_.size(); ++a) {
      if (a == t) continue;
      for (std::size_t b = a + 1; b < pairs_.size(); ++b) {
        if (b == t) continue;
        m = std::max(m, std::abs(X_(pairs_[a].first, pairs_[b].first) -
                                 Y_(pairs_[a].second, pairs_[b].second)));
      }
    }
    return m;
  }

  bool improve(double& dis) {
    // Pairs participating in the current max.
    std::vector<std::size_t> hot;
    for (std::size_t a = 0; a < pairs_.size() && hot.size() < kMaxBottlenecks;
         ++a)
      for (std::size_t b = a + 1; b < pairs_.size(); ++b)
        if (std::abs(X_(pairs_[a].first, pairs_[b].first) -
                     Y_(pairs_[a].second, pairs_[b].second)) == dis) {
          for (std::size_t t : {a, b})
            if (std::find(hot.begin(), hot.end(), t) == hot.end())
              hot.push_back(t);
          break;
        }

    double bestDis = dis;
    std::size_t bestT = 0;
    std::pair<std::size_t, std::size_t> bestPair{0, 0};
    for (std::size_t t : hot) {
      const double floor = max_excluding(t);
      if (floor >= bestDis) continue;
      const auto [xt, yt] = pairs_[t];
      if (side_covered(yt, t, /*y_side=*/true)) {
        for (std::size_t y = 0; y < Y_.size(); ++y) {
          if (y == yt) continue;
          const double cand = std::max(floor, contribution(t, xt, y));
          if (cand < bestDis) {
            bestDis = cand;
            bestT = t;
            bestPair = {xt, y};
          }
        }
      }
      if (side_covered(xt, t, /*y_side=*/false)) {
        for (std::size_t x = 0; x < X_.size(); ++x) {
          if (x == xt) continue;
          const double cand = std::max(floor, contribution(t, x, yt));
          if (cand < bestDis) {
            bestDis = cand;
            bestT = t;
            bestPair = {x, yt};
          }
        }
      }
    }
    if (bestDis >= dis) return false;
    pairs_[bestT] = bestPair;
    dis = bestDis;
    return true;
  }

  // True when index `idx` on the given side stays covered after pair t is
  // redirected elsewhere.
  bool side_covered(std::size_t idx, std::size_t t, bool y_side) const {
    for (std::size_t u = 0; u < pairs_.size(); ++u) {
      if (u == t) continue;
      if ((y_side ? pairs_[u].second : pairs_[u].first) == idx) return true;
    }
    return false;
  }

  const MetricSpace& X_;
  const MetricSpace& Y_;
  Pairs pairs_;
};

}  // namespace

namespace {

// Assign partners one by one in farthest-point order, each minimizing the
// running distortion; then cover the leftover side the same way.
Pairs incremental_seed(const MetricSpace& X, const MetricSpace& Y,
                       const std::vector<std::size_t>& ox,
                       const std::vector<std::size_t>& oy) {
  Pairs pairs;
  std::vector<char> ycov(Y.size(), 0);
  auto added = [&](std::size_t x, std::size_t y) {
    double m = 0.0;
    for (auto [u, v] : pairs)
      m = std::max(m, std::abs(X(x, u) - Y(y, v)));
    return m;
  };
  for (std::size_t x : ox) {
    std::size_t besty = 0;
    double bestc = std::numeric_limits<double>::infinity();
    for (std::size_t y = 0; y < Y.size(); ++y) {
      const double c = added(x, y);
      if (c < bestc) {
        bestc = c;
        besty = y;
      }
    }
    pairs.emplace_back(x, besty);
    ycov[besty] = 1;
  }
  for (std::size_t y : oy) {
    if (ycov[y]) continue;
    std::size_t bestx = 0;
    double bestc = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < X.size(); ++x) {
      const double c = added(x, y);
      if (c < bestc) {
        bestc = c;
        bestx = x;
      }
    }
    pairs.emplace_back(bestx, y);
  }
  return pairs;
}

}  // namespace

GHResult gh_upper_greedy(const MetricSpace& X, const MetricSpace& Y) {
  const std::size_t nx = X.size(), ny = Y.size();
  const auto ox = farthest_point_order(X);
  const auto oy = farthest_point_order(Y);

  std::vector<Pairs> seeds;
  seeds.push_back(incremental_seed(X, Y, ox, oy));
  {
    // Rank pairing along the farthest-point orders; covers both sides.
    Pairs p;
    for (std::size_t k = 0; k < std::max(nx, ny); ++k)
      p.emplace_back(ox[std::min(k, nx - 1)], oy[std::min(k, ny - 1)]);
    seeds.push_back(std::move(p));
  }
  if (nx == ny) {
    Pairs p;
    for (std::size_t i = 0; i < nx; ++i) p.emplace_back(i, i);
    seeds.push_back(std::move(p));
  }

  GHResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (auto& seed : seeds) {
    Pairs improved = BottleneckSearch(X, Y, std::move(seed)).run();
    const double dis = pairs_distortion(improved, X, Y);
    if (dis / 2.0 < best.value) {
      best.value = dis / 2.0;
      best.witness.pairs = std::move(improved);
    }
  }
  return best;
}

namespace {

class ExactSolver {
 public:
  ExactSolver(const MetricSpace& X, const MetricSpace& Y)
      : X_(X),
        Y_(Y),
        nx_(X.size()),
        ny_(Y.size()),
        xorder_(farthest_point_order(X)),
        yorder_(farthest_point_order(Y)),
        ycover_(ny_, 0) {}

  GHResult solve() {
    GHResult greedy = gh_upper_greedy(X_, Y_);
    best_ = distortion(greedy.witness, X_, Y_);
    bestPairs_ = greedy.witness.pairs;
    assign_x(0, 0.0);
    GHResult out;
    out.value = best_ / 2.0;
    out.witness.pairs = bestPairs_;
    return out;
  }

 private:
  double added(std::size_t x, std::size_t y) const {
    double m = 0.0;
    for (auto [u, v] : cur_)
      m = std::max(m, std::abs(X_(x, u) - Y_(y, v)));
    return m;
  }

  void assign_x(std::size_t depth, double dis) {
    if (dis >= best_) return;
    if (depth == nx_) {
      uncovered_.clear();
      for (std::size_t j : yorder_)
        if (ycover_[j] == 0) uncovered_.push_back(j);
      assign_y(0, dis);
      return;
    }
    const std::size_t x = xorder_[depth];
    for (std::size_t j = 0; j < ny_; ++j) {
      const std::size_t y = yorder_[j];
      const double d2 = std::max(dis, added(x, y));
      if (d2 >= best_) continue;
      cur_.emplace_back(x, y);
      ++ycover_[y];
      assign_x(depth + 1, d2);
      --ycover_[y];
      cur_.pop_back();
    }
  }

  void assign_y(std::size_t idx, double dis) {
    if (dis >= best_) return;
    if (idx == uncovered_.size()) {
      best_ = dis;
      bestPairs_ = cur_;
      return;
    }
    const std::size_t y = uncovered_[idx];
    for (std::size_t i = 0; i < nx_; ++i) {
      const std::size_t x = xorder_[i];
      const double d2 = std::max(dis, added(x, y));
      if (d2 >= best_) continue;
      cur_.emplace_back(x, y);
      assign_y(idx + 1, d2);
      cur_.pop_back();
    }
  }

  const MetricSpace& X_;
  const MetricSpace& Y_;
  std::size_t nx_, ny_;
  std::vector<std::size_t> xorder_, yorder_;
  std::vector<int> ycover_;
  Pairs cur_, bestPairs_;
  std::vector<std::size_t> uncovered_;
  double best_ = std::numeric_limits<double>::infinity();
};

}  // namespace

GHResult gh_exact(const MetricSpace& X, const MetricSpace& Y,
                  std::size_t cap) {
  if (X.size() > cap || Y.size() > cap)
    throw std::invalid_argument(
        "gh_exact: space exceeds the exact-solver cap of " +
        std::to_string(cap) +
        " points; use gh_lower_diam / gh_upper_greedy instead");
  return ExactSolver(X, Y).solve();
}

}  // namespace ghspace
