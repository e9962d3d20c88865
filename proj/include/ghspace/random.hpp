#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "ghspace/core.hpp"
#include "ghspace/pointed.hpp"
#include "ghspace/spider.hpp"

namespace ghspace {

/// splitmix64 finalizer; used to derive independent per-trial streams from
/// one master seed.
std::uint64_t splitmix64(std::uint64_t x);

/// Engine for trial `index` under the master seed.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index);

/// Uniform entries in [lo, hi] with 2*lo >= hi, so the triangle inequality
/// holds exactly with positive margin.
MetricSpace random_metric(std::mt19937_64& rng, std::size_t n,
                          double lo = 1.2, double hi = 1.8,
                          const std::string& prefix = "p");

/// Euclidean distances of a random point cloud in R^dim.
MetricSpace random_point_cloud(std::mt19937_64& rng, std::size_t n,
                               std::size_t dim = 3, double spread = 1.0,
                               const std::string& prefix = "p");

/// Class-structured pseudo-metric: `classes` blocks at exact distance 0
/// inside and uniform [1, 2] between blocks.
PseudoMetric random_pseudometric(std::mt19937_64& rng, std::size_t n,
                                 std::size_t classes,
                                 const std::string& prefix = "p");

/// Uniform point of the parameter cube truncated to N legs.
SpiderParams random_spider_params(std::mt19937_64& rng, std::size_t legs);

/// Symmetric entrywise perturbation of size <= delta followed by a
/// shortest-path repair; stays within delta of the input entrywise.
MetricSpace perturbed_metric(std::mt19937_64& rng, const MetricSpace& X,
                             double delta);

struct RoughIsometryTrial {
  PointedSpace X;
  PointedSpace Y;
  RoughIsometryCert cert;
};

/// Certified trial instance: X random, Y a delta-perturbed permuted copy,
/// the map the inverse permutation. The slack is measured rather than
/// assumed and the certificate comes from the checker itself.
RoughIsometryTrial random_rough_isometry(std::mt19937_64& rng, std::size_t n,
                                         double delta, bool finite_R);

}  // namespace ghspace
