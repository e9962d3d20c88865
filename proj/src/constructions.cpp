#include "ghspace/constructions.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace ghspace {

std::vector<std::string> disjoint_union_labels(
    const std::vector<std::string>& x, const std::vector<std::string>& y) {
  std::set<std::string> used(x.begin(), x.end());
  std::vector<std::string> out(x);
  out.reserve(x.size() + y.size());
  for (const auto& l : y) {
    std::string cand = l;
    for (int suffix = 2; used.count(cand); ++suffix)
      cand = l + "#" + std::to_string(suffix);
    used.insert(cand);
    out.push_back(cand);
  }
  return out;
}

MetricSpace glue(const MetricSpace& X, const MetricSpace& Y,
                 const std::string& p_x, const std::string& p_y) {
  const std::size_t px = X.index_of(p_x);
  const std::size_t py = Y.index_of(p_y);
  const std::size_t nx = X.size(), ny = Y.size();

  // Point set: all of X, then Y minus its wedge point.
  std::vector<std::size_t> ymap;  // Y index -> position among kept Y points
  std::vector<std::string> ylabels;
  for (std::size_t j = 0; j < ny; ++j) {
    if (j == py) continue;
    ymap.push_back(j);
    ylabels.push_back(Y.label(j));
  }
  std::vector<std::string> labels =
      disjoint_union_labels(X.labels(), ylabels);

  const std::size_t n = nx + ny - 1;
  std::vector<double> h(n * n, 0.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return h[i * n + j]; };

  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < nx; ++j) at(i, j) = X(i, j);
  for (std::size_t a = 0; a < ymap.size(); ++a)
    for (std::size_t b = 0; b < ymap.size(); ++b)
      at(nx + a, nx + b) = Y(ymap[a], ymap[b]);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t a = 0; a < ymap.size(); ++a) {
      const double v = X(i, px) + Y(py, ymap[a]);
      at(i, nx + a) = v;
      at(nx + a, i) = v;
    }
  return MetricSpace(std::move(labels), std::move(h));
}

MetricSpace l2_product(const MetricSpace& X, const MetricSpace& Y) {
  const std::size_t nx = X.size(), ny = Y.size();
  const std::size_t n = nx * ny;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j)
      labels.push_back("(" + X.label(i) + "," + Y.label(j) + ")");

  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j)
      for (std::size_t u = 0; u < nx; ++u)
        for (std::size_t v = 0; v < ny; ++v) {
          const double a = X(i, u), b = Y(j, v);
          // Keep zero-summand cases exact.
          double val;
          if (a == 0.0) val = b;
          else if (b == 0.0) val = a;
          else val = std::sqrt(a * a + b * b);
          d[(i * ny + j) * n + (u * ny + v)] = val;
        }
  return MetricSpace(std::move(labels), std::move(d));
}

MetricSpace l2_product_many(const std::vector<MetricSpace>& factors) {
  if (factors.empty())
    throw std::invalid_argument("l2_product_many: no factors");
  std::size_t n = 1;
  for (const auto& f : factors) n *= f.size();

  const std::size_t nf = factors.size();
  std::vector<std::vector<std::size_t>> coord(n, std::vector<std::size_t>(nf));
  std::vector<std::string> labels(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = nf; i-- > 0;) {
      coord[idx][i] = rest % factors[i].size();
      rest /= factors[i].size();
    }
    std::string l = "(";
    for (std::size_t i = 0; i < nf; ++i) {
      if (i) l += ",";
      l += factors[i].label(coord[idx][i]);
    }
    labels[idx] = l + ")";
  }

  std::vector<double> d(n * n, 0.0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      double sum = 0.0, single = 0.0;
      std::size_t nonzero = 0;
      for (std::size_t i = 0; i < nf; ++i) {
        const double t = factors[i](coord[x][i], coord[y][i]);
        if (t != 0.0) {
          ++nonzero;
          single = t;
          sum += t * t;
        }
      }
      const double v =
          nonzero == 0 ? 0.0 : (nonzero == 1 ? single : std::sqrt(sum));
      d[x * n + y] = v;
      d[y * n + x] = v;
    }
  return MetricSpace(std::move(labels), std::move(d));
}

MetricSpace scale(double L, const MetricSpace& X) {
  if (!(L > 0.0)) throw std::invalid_argument("scale: factor must be > 0");
  std::vector<double> d(X.data());
  for (double& v : d) v *= L;
  return MetricSpace(X.labels(), std::move(d));
}

MetricSpace shortest_path_closure(const MetricSpace& X) {
  const std::size_t n = X.size();
  std::vector<double> d(X.data());
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
  return MetricSpace(X.labels(), std::move(d));
}

MetricSpace ball_restrict(const MetricSpace& X, const std::string& center,
                          double r) {
  const std::size_t c = X.index_of(center);
  if (std::isnan(r) || r < 0.0)
    throw std::invalid_argument("ball_restrict: radius must be >= 0");
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < X.size(); ++i)
    if (X(c, i) <= r) keep.push_back(i);
  return X.restrict(keep);
}

}  // namespace ghspace
