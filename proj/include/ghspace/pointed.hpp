#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ghspace/core.hpp"
#include "ghspace/family.hpp"

namespace ghspace {

struct PointedSpace {
  MetricSpace space;
  std::size_t base = 0;

  const std::string& base_label() const { return space.label(base); }
};

/// Sentinel for map entries outside the domain ball.
inline constexpr std::size_t kUnmapped = static_cast<std::size_t>(-1);

struct RoughViolation {
  int condition = 0;          // 1 = base, 2 = density, 3 = distortion
  std::size_t i = 0, j = 0;   // witnesses (j unused for conditions 1-2)
  double amount = 0.0;
};

/// Verdict and witnesses for a candidate (R, eps)-rough isometry given as a
/// function table on the closed R-ball around the base point.
struct RoughIsometryCert {
  std::vector<std::size_t> map;  // X index -> Y index; kUnmapped outside ball
  double R = 0.0;                // infinity allowed
  double eps = 0.0;
  bool verdict = false;
  std::vector<RoughViolation> violations;
};

/// Check the three defining conditions of an (R, eps)-rough isometry on the
/// finite points: base displacement <= eps, image eps-dense in the
/// (R-eps)-ball of the target, distortion <= eps on the domain ball.
/// Requires R > eps > 0 and f defined on the whole ball.
RoughIsometryCert check_rough_isometry(const std::vector<std::size_t>& f,
                                       const PointedSpace& X,
                                       const PointedSpace& Y, double R,
                                       double eps);

struct AdmissibleReport {
  bool admissible = false;
  std::string failed_clause;     // empty when admissible
  std::size_t witness = 0;       // offending point for the failing clause
};

/// Check (t; a, b)-admissibility of a metric h on the disjoint union
/// (X block first): both restrictions, h(a,b) < t, and both
/// ball-into-neighborhood inclusions. Throws if h itself is not a valid
/// metric on the union.
AdmissibleReport check_admissible(const MetricSpace& h, const PointedSpace& X,
                                  const PointedSpace& Y, double t);

/// Metric on X u Y realizing the certified rough isometry: cross distances
/// min_z [d(x,z) + eps + e(f(z),y)] over the domain ball, then an all-pairs
/// shortest-path repair. Both restrictions survive the repair.
MetricSpace glue_from_rough_isometry(const RoughIsometryCert& cert,
                                     const PointedSpace& X,
                                     const PointedSpace& Y);

/// Pointed-GH upper bound of a certified map: min(max{2 eps, 1/(R - eps)},
/// 1/2). Throws for uncertified input.
double pgh_upper(const RoughIsometryCert& cert);

struct FactorMap {
  PointedSpace domain;
  PointedSpace target;
  std::vector<std::size_t> map;
};

struct ProductRoughIsometry {
  PointedSpace domain;  // l2 product of the factor domains
  PointedSpace target;  // l2 product of the factor targets
  std::vector<std::size_t> map;
  RoughIsometryCert cert;
};

/// Coordinatewise product of (infinity, eps)-rough isometries, certified at
/// slack sqrt(n+1) * eps. Throws if some factor map is not itself
/// certified at (infinity, eps).
ProductRoughIsometry product_rough_isometry(
    const std::vector<FactorMap>& factors, double eps);

struct ProjectionRoughIsometry {
  PointedSpace product;  // l2 product of the closed balls
  std::vector<std::size_t> map;
  RoughIsometryCert cert;
};

/// The i-th projection of a product of closed balls B(a_j, radii[j]) onto
/// the full factor space, checked at slack 2 sqrt(n) * eps. The premise
/// (non-i radii <= eps, radius i >= R) is not enforced; violations surface
/// as a failed certificate with witnesses.
ProjectionRoughIsometry projection_rough_isometry(
    const std::vector<PointedSpace>& spaces, const std::vector<double>& radii,
    std::size_t factor, double R, double eps);

/// l2 product of closed balls around the base points, pointed at the base
/// tuple. A radius may be infinity (whole factor) or 0 (singleton).
PointedSpace ball_product(const std::vector<PointedSpace>& spaces,
                          const std::vector<double>& radii);

/// Ball-radius function of the pointed family: zeta/(1 - zeta), so exactly
/// infinity at v_i and exactly 0 at the other anchors.
double sigma(std::size_t i, ParamPoint s, const FamilyConfig& cfg);

}  // namespace ghspace
