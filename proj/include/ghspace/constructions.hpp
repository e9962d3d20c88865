#pragma once

#include <string>
#include <vector>

#include "ghspace/core.hpp"

namespace ghspace {

/// Wedge amalgamation: join X and Y at a single point, cross distances
/// summing through the wedge. p_x and p_y may carry different labels; the
/// identified point keeps p_x's label. Y-side labels that collide with an
/// X label are suffixed deterministically.
MetricSpace glue(const MetricSpace& X, const MetricSpace& Y,
                 const std::string& p_x, const std::string& p_y);

/// Cartesian product with distance sqrt(d(x,u)^2 + e(y,v)^2); point labels
/// are "(xLabel,yLabel)".
MetricSpace l2_product(const MetricSpace& X, const MetricSpace& Y);

/// n-ary l2 product, row-major point order, flat "(l1,l2,...)" labels.
MetricSpace l2_product_many(const std::vector<MetricSpace>& factors);

/// Every entry multiplied by L > 0.
MetricSpace scale(double L, const MetricSpace& X);

/// Induced subspace on the closed ball {y : d(center,y) <= r}; r may be
/// infinity (whole space) and r = 0 gives the singleton.
MetricSpace ball_restrict(const MetricSpace& X, const std::string& center,
                          double r);

/// Labels for a disjoint union: X labels unchanged, colliding Y labels get
/// "#2", "#3", ... suffixes.
std::vector<std::string> disjoint_union_labels(
    const std::vector<std::string>& x, const std::vector<std::string>& y);

/// All-pairs shortest-path closure of a symmetric nonnegative matrix: the
/// minimal repair of broken triangle inequalities.
MetricSpace shortest_path_closure(const MetricSpace& X);

}  // namespace ghspace
