#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghspace/core.hpp"

namespace ghspace {

/// Truncated point of the parameter cube: leg scales a_1..a_N with the
/// implied a_0 = 1. Coordinate i must lie in [2^(-2i), 2^(-2i+1)], so the
/// scales are strictly decreasing and separated by factors of two.
struct SpiderParams {
  std::vector<double> a;

  std::size_t legs() const { return a.size(); }  // N
  /// Leg scale with the implied a_0 = 1.
  double scale_of(std::size_t i) const { return i == 0 ? 1.0 : a[i - 1]; }
  bool valid() const;

  static double coord_min(std::size_t i);  // 2^(-2i)
  static double coord_max(std::size_t i);  // 2^(-2i+1)
};

/// Sup distance between two parameter points of equal truncation depth.
double tau(const SpiderParams& x, const SpiderParams& y);

struct SpiderLayout {
  struct Node {
    std::size_t leg = 0;
    double s = 0.0;  // arc parameter in [0,1]; the center is s = 0
  };
  std::vector<Node> nodes;  // one per point, aligned with the space
};

struct SpiderSpace {
  MetricSpace space;
  SpiderLayout layout;
};

/// Radial tree distance between two layout nodes: a_i|s-t| on a shared leg,
/// a_i s + a_j t across legs.
double spider_distance(const SpiderParams& p, SpiderLayout::Node u,
                       SpiderLayout::Node v);

/// Discretized spider: legs 0..N sampled at s = 1/m_g .. 1 plus the center,
/// all distances multiplied by K. (N+1)*m_g + 1 points.
SpiderSpace build_spider(const SpiderParams& p, std::size_t grid,
                         double K = 1.0);

struct Fingerprint {
  double K = 0.0;
  std::vector<double> a;
};

/// Thrown when parameter recovery cannot identify the tree structure; the
/// stage names which step failed ("center", "tips", "legs", "params").
class RecoveryError : public std::runtime_error {
 public:
  RecoveryError(std::string stage, const std::string& what)
      : std::runtime_error("fingerprint: " + stage + ": " + what),
        stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// Recover (K, a) from a discretized spider matrix. The center is the
/// unique point lying on the most point-pair geodesics; tips then peel off
/// in decreasing distance from it, each removing its leg, and the tip
/// distances K = d_0 >= d_1 >= ... give the scales a_i = d_i / K.
Fingerprint fingerprint(const MetricSpace& X);

struct LipschitzGap {
  double lhs = 0.0;  // uniform distance of the two spider matrices
  double rhs = 0.0;  // 2 tau(a, b)
};

/// Both sides of the 2-tau bound on a shared grid.
LipschitzGap lipschitz_gap(const SpiderParams& a, const SpiderParams& b,
                           std::size_t grid);

}  // namespace ghspace
