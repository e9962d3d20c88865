#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ghspace/core.hpp"

namespace ghspace {

/// Relation between two point sets. Valid when every index on both sides
/// appears in some pair; the distortion of a valid correspondence bounds
/// twice the GH distance from above.
struct Correspondence {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  bool covers(std::size_t nx, std::size_t ny) const;
  static Correspondence identity(std::size_t n);
};

/// Hausdorff distance between two non-empty index subsets inside the
/// ambient space Z: max over each side of the min distance to the other.
double hausdorff(const std::vector<std::size_t>& A,
                 const std::vector<std::size_t>& B, const MetricSpace& Z);

/// Max over pairs (i,j),(i',j') in c of |d_X(i,i') - d_Y(j,j')|.
/// Throws if c does not cover both sides.
double distortion(const Correspondence& c, const MetricSpace& X,
                  const MetricSpace& Y);

struct GHResult {
  double value = 0.0;
  Correspondence witness;
};

/// Exact GH distance as half the minimal correspondence distortion, found
/// by branch-and-bound. Only for spaces of at most `cap` points; larger
/// inputs throw with a pointer to the bound estimators.
GHResult gh_exact(const MetricSpace& X, const MetricSpace& Y,
                  std::size_t cap = 6);

/// Diameter lower bound: |diam X - diam Y| / 2.
double gh_lower_diam(const MetricSpace& X, const MetricSpace& Y);

/// Identity-correspondence upper bound for two matrices on one label set:
/// uniform_distance(d, e) / 2.
double gh_upper_same_labels(const MetricSpace& d, const MetricSpace& e);

/// Heuristic upper bound: farthest-point seeded correspondences improved by
/// local reassignment, best of a fixed set of deterministic starts.
GHResult gh_upper_greedy(const MetricSpace& X, const MetricSpace& Y);

}  // namespace ghspace
