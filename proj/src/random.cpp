#include "ghspace/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ghspace/constructions.hpp"

namespace ghspace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(index)));
}

namespace {

std::vector<std::string> make_labels(std::size_t n,
                                     const std::string& prefix) {
  std::vector<std::string> l(n);
  for (std::size_t i = 0; i < n; ++i) l[i] = prefix + std::to_string(i);
  return l;
}

}  // namespace

MetricSpace random_metric(std::mt19937_64& rng, std::size_t n, double lo,
                          double hi, const std::string& prefix) {
  if (!(lo > 0.0) || !(hi >= lo) || !(2.0 * lo >= hi))
    throw std::invalid_argument("random_metric: need 0 < lo <= hi <= 2*lo");
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = u(rng);
  return MetricSpace(make_labels(n, prefix), std::move(d));
}

MetricSpace random_point_cloud(std::mt19937_64& rng, std::size_t n,
                               std::size_t dim, double spread,
                               const std::string& prefix) {
  std::uniform_real_distribution<double> u(0.0, spread);
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (auto& p : pts)
    for (double& c : p) c = u(rng);
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < dim; ++c) {
        const double diff = pts[i][c] - pts[j][c];
        s += diff * diff;
      }
      d[i * n + j] = d[j * n + i] = std::sqrt(s);
    }
  return MetricSpace(make_labels(n, prefix), std::move(d));
}

PseudoMetric random_pseudometric(std::mt19937_64& rng, std::size_t n,
                                 std::size_t classes,
                                 const std::string& prefix) {
  if (classes == 0 || classes > n)
    throw std::invalid_argument("random_pseudometric: bad class count");
  // Class of each point: first `classes` points seed the classes so none
  // is empty.
  std::vector<std::size_t> cls(n);
  std::uniform_int_distribution<std::size_t> pick(0, classes - 1);
  for (std::size_t i = 0; i < n; ++i) cls[i] = i < classes ? i : pick(rng);

  std::uniform_real_distribution<double> u(1.0, 2.0);
  std::vector<double> between(classes * classes, 0.0);
  for (std::size_t a = 0; a < classes; ++a)
    for (std::size_t b = a + 1; b < classes; ++b)
      between[a * classes + b] = between[b * classes + a] = u(rng);

  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      d[i * n + j] = d[j * n + i] = between[cls[i] * classes + cls[j]];
  return PseudoMetric(make_labels(n, prefix), std::move(d));
}

SpiderParams random_spider_params(std::mt19937_64& rng, std::size_t legs) {
  SpiderParams p;
  p.a.resize(legs);
  for (std::size_t i = 1; i <= legs; ++i) {
    std::uniform_real_distribution<double> u(SpiderParams::coord_min(i),
                                             SpiderParams::coord_max(i));
    p.a[i - 1] = u(rng);
  }
  return p;
}

MetricSpace perturbed_metric(std::mt19937_64& rng, const MetricSpace& X,
                             double delta) {
  std::uniform_real_distribution<double> u(-delta, delta);
  const std::size_t n = X.size();
  std::vector<double> d(X.data());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = std::max(0.0, d[i * n + j] + u(rng));
      d[i * n + j] = d[j * n + i] = v;
    }
  return shortest_path_closure(MetricSpace(X.labels(), std::move(d)));
}

RoughIsometryTrial random_rough_isometry(std::mt19937_64& rng, std::size_t n,
                                         double delta, bool finite_R) {
  MetricSpace base = (n % 2) ? random_point_cloud(rng, n, 3, 2.0, "x")
                             : random_metric(rng, n, 1.2, 1.8, "x");
  MetricSpace pert = perturbed_metric(rng, base, delta);

  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::shuffle(sigma.begin(), sigma.end(), rng);

  std::vector<std::string> ylabels(n);
  std::vector<double> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    ylabels[i] = "y" + std::to_string(i);
    for (std::size_t j = 0; j < n; ++j) e[i * n + j] = pert(sigma[i], sigma[j]);
  }
  PointedSpace X{base, 0};
  std::vector<std::size_t> inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[sigma[i]] = i;
  PointedSpace Y{MetricSpace(std::move(ylabels), std::move(e)), inv[0]};

  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      worst =
          std::max(worst, std::abs(X.space(i, j) - Y.space(inv[i], inv[j])));
  const double eps = worst * 1.05 + 1e-3;

  double R = std::numeric_limits<double>::infinity();
  if (finite_R) {
    std::uniform_real_distribution<double> u(0.4, 2.0);
    R = eps + u(rng);
  }
  auto cert = check_rough_isometry(inv, X, Y, R, eps);
  return {std::move(X), std::move(Y), std::move(cert)};
}

}  // namespace ghspace
