#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "ghspace/core.hpp"
#include "ghspace/spider.hpp"

namespace ghspace {

using ParamPoint = std::array<double, 2>;

/// Everything needed to materialize the glued family over the unit square:
/// anchor spaces, their parameter points, grid resolution, branch count,
/// spider discretization, and the wedge point of the product.
struct FamilyConfig {
  std::vector<MetricSpace> anchors;        // X_1 .. X_{n+1}
  std::vector<ParamPoint> anchor_points;   // v_1 .. v_{n+1}, grid-aligned
  std::size_t grid = 16;                   // lattice points per axis
  std::size_t branch_count = 0;            // m; 0 means n+2
  std::size_t spider_legs = 8;             // N
  std::size_t spider_grid = 16;            // m_g
  std::vector<std::size_t> wedge;          // coordinates of p; empty = all 0
  std::size_t product_cap = 1000;

  std::size_t branches() const {
    return branch_count ? branch_count : anchors.size() + 1;
  }
  std::size_t product_size() const;
  std::size_t wedge_index() const;  // row-major index of p in the product
};

/// Validates and normalizes in place (snaps anchor points to exact lattice
/// coordinates). Throws std::invalid_argument on a bad config.
void normalize_config(FamilyConfig& cfg);

/// Three anchors on a 16x16 grid ready for sweeps: scaled copies of a unit
/// square at corners of the parameter domain.
FamilyConfig default_family_config();

double param_dist(ParamPoint s, ParamPoint t);

/// Lattice of grid x grid parameter points, row-major.
std::vector<ParamPoint> lattice(std::size_t grid);

/// Index of the anchor at s, or anchors.size() when s is not an anchor.
std::size_t anchor_at(ParamPoint s, const FamilyConfig& cfg);

/// Weight of factor i: nearest-other-anchor distance over its sum with the
/// distance to v_i. Exactly 1 at v_i, exactly 0 at the other anchors.
double zeta(std::size_t i, ParamPoint s, const FamilyConfig& cfg);

/// Spider scale: distance to the anchor set clamped at 1; exactly 0 on it.
double xi(ParamPoint s, const FamilyConfig& cfg);

/// Parameter-cube point fed to the spider at (s, branch k): coordinates
/// 1..3 encode (s1, s2, xi(s)*(k-1)/(m-1)), the rest sit at the interval
/// floor. Injective on (non-anchor s, k); branches collapse exactly at
/// anchors. k is 1-based.
SpiderParams rho_params(ParamPoint s, std::size_t k, const FamilyConfig& cfg);

/// Weighted l2-product pseudo-metric on the anchor product; a metric iff s
/// is not an anchor.
PseudoMetric build_E(ParamPoint s, const FamilyConfig& cfg);

/// The glued space on Z = product u spider with bookkeeping for white-box
/// access to the spider block. Indices [0, product_size) are the product;
/// spider_indices maps each spider-layout node to its Z index (the tip 1_0
/// is identified with the wedge point p).
struct GluedSpace {
  PseudoMetric space;
  std::size_t product_size = 0;
  std::size_t wedge_index = 0;
  std::vector<std::size_t> spider_indices;
  SpiderLayout spider_layout;
};

GluedSpace build_D(ParamPoint s, std::size_t k, const FamilyConfig& cfg);

/// Submatrix of the spider block (a spider scaled by xi(s)).
MetricSpace spider_block(const GluedSpace& g);

/// The family member at (s, k): the anchor space itself at anchors, the
/// quotient of build_D elsewhere.
MetricSpace build_F(ParamPoint s, std::size_t k, const FamilyConfig& cfg);

struct BranchSelection {
  std::size_t k = 0;
  double threshold = 0.0;
  // matches[i][j-1] = grid points where F(s, j) fell within threshold of
  // anchor i (empty everywhere on generic configs).
  std::vector<std::vector<std::vector<ParamPoint>>> matches;
};

/// Smallest branch whose column has no anchor matches over the grid.
/// Throws std::runtime_error with the collision table when none exists.
BranchSelection select_branch(const FamilyConfig& cfg, std::size_t grid = 0);

/// Column selection given a match-count table [anchor][branch]; smallest
/// clean column, or anchors.size()+... throws when every column collides.
std::size_t pick_clean_column(
    const std::vector<std::vector<std::size_t>>& match_counts);

struct SweepRow {
  ParamPoint s{};
  std::size_t k = 0;
  double min_fp_sep = 0.0;      // sup-distance to the nearest other fingerprint
  double continuity_bound = 0.0;  // max half-uniform-distance to forward neighbors
  bool is_metric = false;
};

struct SweepReport {
  std::vector<SweepRow> rows;   // one per non-anchor grid point
  double min_separation = 0.0;
  double max_edge_bound = 0.0;
  std::size_t metric_failures = 0;
};

/// Fingerprint the spider block of D at every non-anchor grid point and
/// measure pairwise separation, per-edge continuity bounds, and strict
/// metricity. grid = 0 uses cfg.grid.
SweepReport injectivity_sweep(const FamilyConfig& cfg, std::size_t grid,
                              std::size_t k);

/// Per-edge Lipschitz constant of the sweep: uniform_distance(D_s, D_t) is
/// at most this times param_dist(s, t).
double continuity_constant(const FamilyConfig& cfg);

/// Max over lattice edges (anchors included) of gh_upper_same_labels
/// between the glued matrices at the edge endpoints.
double max_edge_bound(const FamilyConfig& cfg, std::size_t grid,
                      std::size_t k);

/// Samples of the arc {(x, sin(1/x)) : x in [2^-n, 1]} with the plane
/// metric; n = 0 degenerates to a single point.
MetricSpace sine_curve(std::size_t n, std::size_t samples);

}  // namespace ghspace
