#include "ghspace/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ghspace/constructions.hpp"
#include "ghspace/gh.hpp"

namespace ghspace {

std::size_t FamilyConfig::product_size() const {
  std::size_t n = 1;
  for (const auto& a : anchors) n *= a.size();
  return n;
}

std::size_t FamilyConfig::wedge_index() const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const std::size_t c = wedge.empty() ? 0 : wedge[i];
    idx = idx * anchors[i].size() + c;
  }
  return idx;
}

double param_dist(ParamPoint s, ParamPoint t) {
  return std::hypot(s[0] - t[0], s[1] - t[1]);
}

std::vector<ParamPoint> lattice(std::size_t grid) {
  std::vector<ParamPoint> pts;
  pts.reserve(grid * grid);
  const double steps = static_cast<double>(grid - 1);
  for (std::size_t i = 0; i < grid; ++i)
    for (std::size_t j = 0; j < grid; ++j)
      pts.push_back({static_cast<double>(i) / steps,
                     static_cast<double>(j) / steps});
  return pts;
}

void normalize_config(FamilyConfig& cfg) {
  const std::size_t nf = cfg.anchors.size();
  if (nf < 2)
    throw std::invalid_argument("family config: need at least two anchors");
  if (cfg.anchor_points.size() != nf)
    throw std::invalid_argument(
        "family config: one parameter point per anchor required");
  if (cfg.grid < 2) throw std::invalid_argument("family config: grid < 2");
  if (cfg.branches() < 2)
    throw std::invalid_argument("family config: need at least two branches");
  if (cfg.spider_legs < 3)
    throw std::invalid_argument(
        "family config: spider needs at least three legs for the parameter "
        "encoding");
  if (cfg.spider_grid < 2)
    throw std::invalid_argument("family config: spider grid < 2");
  if (!cfg.wedge.empty()) {
    if (cfg.wedge.size() != nf)
      throw std::invalid_argument("family config: wedge tuple length");
    for (std::size_t i = 0; i < nf; ++i)
      if (cfg.wedge[i] >= cfg.anchors[i].size())
        throw std::invalid_argument("family config: wedge index out of range");
  }
  if (cfg.product_size() > cfg.product_cap)
    throw std::invalid_argument("family config: product size " +
                                std::to_string(cfg.product_size()) +
                                " exceeds cap " +
                                std::to_string(cfg.product_cap));

  // Snap anchor points onto exact lattice coordinates; the level-set
  // guarantees of zeta and xi rely on bitwise coincidence.
  const double steps = static_cast<double>(cfg.grid - 1);
  for (auto& v : cfg.anchor_points)
    for (double& c : v) {
      if (c < 0.0 || c > 1.0)
        throw std::invalid_argument(
            "family config: anchor point outside the unit square");
      const double scaled = c * steps;
      if (std::abs(scaled - std::round(scaled)) > 1e-9)
        throw std::invalid_argument(
            "family config: anchor point is not grid-aligned");
      c = std::round(scaled) / steps;
    }
  for (std::size_t i = 0; i < nf; ++i)
    for (std::size_t j = i + 1; j < nf; ++j)
      if (cfg.anchor_points[i] == cfg.anchor_points[j])
        throw std::invalid_argument("family config: coincident anchor points");
}

FamilyConfig default_family_config() {
  auto square = [](double side, const std::string& tag) {
    const double diag = side * std::sqrt(2.0);
    return MetricSpace::from_rows(
        {tag + "0", tag + "1", tag + "2", tag + "3"},
        {{0, side, diag, side},
         {side, 0, side, diag},
         {diag, side, 0, side},
         {side, diag, side, 0}});
  };
  FamilyConfig cfg;
  cfg.anchors = {square(1.0, "a"), square(1.05, "b"), square(1.1, "c")};
  cfg.anchor_points = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}};
  normalize_config(cfg);
  return cfg;
}

std::size_t anchor_at(ParamPoint s, const FamilyConfig& cfg) {
  for (std::size_t i = 0; i < cfg.anchor_points.size(); ++i)
    if (s == cfg.anchor_points[i]) return i;
  return cfg.anchors.size();
}

double zeta(std::size_t i, ParamPoint s, const FamilyConfig& cfg) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < cfg.anchor_points.size(); ++j)
    if (j != i) g = std::min(g, param_dist(s, cfg.anchor_points[j]));
  const double h = param_dist(s, cfg.anchor_points[i]);
  if (h == 0.0) return 1.0;
  if (g == 0.0) return 0.0;
  return g / (g + h);
}

double xi(ParamPoint s, const FamilyConfig& cfg) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& v : cfg.anchor_points)
    d = std::min(d, param_dist(s, v));
  return std::min(1.0, d);
}

SpiderParams rho_params(ParamPoint s, std::size_t k, const FamilyConfig& cfg) {
  const std::size_t m = cfg.branches();
  if (k < 1 || k > m)
    throw std::invalid_argument("rho_params: branch out of range");
  const double u[3] = {
      s[0], s[1],
      xi(s, cfg) * static_cast<double>(k - 1) / static_cast<double>(m - 1)};
  SpiderParams p;
  p.a.resize(cfg.spider_legs);
  for (std::size_t i = 1; i <= cfg.spider_legs; ++i)
    p.a[i - 1] = SpiderParams::coord_min(i) * (i <= 3 ? 1.0 + u[i - 1] : 1.0);
  return p;
}

namespace {

std::vector<std::string> product_labels(const FamilyConfig& cfg) {
  const std::size_t np = cfg.product_size();
  std::vector<std::string> labels(np);
  for (std::size_t idx = 0; idx < np; ++idx) {
    std::size_t rest = idx;
    std::vector<std::size_t> coord(cfg.anchors.size());
    for (std::size_t i = cfg.anchors.size(); i-- > 0;) {
      coord[i] = rest % cfg.anchors[i].size();
      rest /= cfg.anchors[i].size();
    }
    std::string l = "(";
    for (std::size_t i = 0; i < coord.size(); ++i) {
      if (i) l += ",";
      l += cfg.anchors[i].label(coord[i]);
    }
    labels[idx] = l + ")";
  }
  return labels;
}

// Weighted l2 combination with exact single-term and all-zero shortcuts.
double combine(const std::vector<double>& terms) {
  double sum = 0.0;
  double single = 0.0;
  std::size_t nonzero = 0;
  for (double t : terms) {
    if (t != 0.0) {
      ++nonzero;
      single = t;
      sum += t * t;
    }
  }
  if (nonzero == 0) return 0.0;
  if (nonzero == 1) return std::abs(single);
  return std::sqrt(sum);
}

}  // namespace

PseudoMetric build_E(ParamPoint s, const FamilyConfig& cfg) {
  const std::size_t nf = cfg.anchors.size();
  const std::size_t np = cfg.product_size();
  if (np > cfg.product_cap)
    throw std::invalid_argument("build_E: product size exceeds cap");

  std::vector<double> w(nf);
  for (std::size_t i = 0; i < nf; ++i) w[i] = zeta(i, s, cfg);

  // Decode row-major indices once.
  std::vector<std::vector<std::size_t>> coord(np,
                                              std::vector<std::size_t>(nf));
  for (std::size_t idx = 0; idx < np; ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = nf; i-- > 0;) {
      coord[idx][i] = rest % cfg.anchors[i].size();
      rest /= cfg.anchors[i].size();
    }
  }

  std::vector<double> d(np * np, 0.0);
  std::vector<double> terms(nf);
  for (std::size_t x = 0; x < np; ++x)
    for (std::size_t y = x + 1; y < np; ++y) {
      for (std::size_t i = 0; i < nf; ++i)
        terms[i] = w[i] * cfg.anchors[i](coord[x][i], coord[y][i]);
      const double v = combine(terms);
      d[x * np + y] = v;
      d[y * np + x] = v;
    }
  return PseudoMetric(product_labels(cfg), std::move(d));
}

GluedSpace build_D(ParamPoint s, std::size_t k, const FamilyConfig& cfg) {
  const PseudoMetric E = build_E(s, cfg);
  const double x = xi(s, cfg);
  const SpiderSpace spider =
      build_spider(rho_params(s, k, cfg), cfg.spider_grid, 1.0);

  const std::size_t np = E.size();
  const std::size_t ns = spider.space.size();
  const std::size_t p = cfg.wedge_index();
  // The tip 1_0 sits right after the center and the first leg's interior.
  const std::size_t tip0 = cfg.spider_grid;

  std::vector<std::size_t> spider_indices(ns);
  std::vector<std::string> labels(E.labels());
  labels.reserve(np + ns - 1);
  for (std::size_t q = 0; q < ns; ++q) {
    if (q == tip0) {
      spider_indices[q] = p;
    } else {
      spider_indices[q] = labels.size();
      labels.push_back(spider.space.label(q));
    }
  }

  const std::size_t n = np + ns - 1;
  std::vector<double> d(n * n, 0.0);
  auto set = [&](std::size_t i, std::size_t j, double v) {
    d[i * n + j] = v;
    d[j * n + i] = v;
  };

  for (std::size_t a = 0; a < np; ++a)
    for (std::size_t b = a + 1; b < np; ++b) set(a, b, E(a, b));

  for (std::size_t q = 0; q < ns; ++q) {
    if (q == tip0) continue;
    const std::size_t zq = spider_indices[q];
    // Spider block, scaled by xi.
    for (std::size_t r = q + 1; r < ns; ++r) {
      if (r == tip0) continue;
      set(zq, spider_indices[r], x * spider.space(q, r));
    }
    // Cross distances route through the wedge p = 1_0.
    const double arm = x * spider.space(tip0, q);
    for (std::size_t a = 0; a < np; ++a) set(a, zq, E(a, p) + arm);
  }

  return {PseudoMetric(std::move(labels), std::move(d)), np, p,
          std::move(spider_indices), spider.layout};
}

MetricSpace spider_block(const GluedSpace& g) {
  return g.space.restrict(g.spider_indices);
}

MetricSpace build_F(ParamPoint s, std::size_t k, const FamilyConfig& cfg) {
  const std::size_t i = anchor_at(s, cfg);
  if (i < cfg.anchors.size()) return cfg.anchors[i];
  return quotient_unchecked(build_D(s, k, cfg).space).space;
}

std::size_t pick_clean_column(
    const std::vector<std::vector<std::size_t>>& match_counts) {
  if (match_counts.empty())
    throw std::invalid_argument("pick_clean_column: empty table");
  const std::size_t m = match_counts.front().size();
  for (std::size_t j = 0; j < m; ++j) {
    bool clean = true;
    for (const auto& row : match_counts)
      if (row.size() != m)
        throw std::invalid_argument("pick_clean_column: ragged table");
      else if (row[j] > 0)
        clean = false;
    if (clean) return j + 1;  // branches are 1-based
  }
  std::ostringstream os;
  os << "no collision-free branch column; match counts per (anchor, branch):";
  for (std::size_t i = 0; i < match_counts.size(); ++i) {
    os << " [anchor " << i << ":";
    for (std::size_t j = 0; j < m; ++j) os << " " << match_counts[i][j];
    os << "]";
  }
  throw std::runtime_error(os.str());
}

BranchSelection select_branch(const FamilyConfig& cfg, std::size_t grid) {
  if (grid == 0) grid = cfg.grid;
  const std::size_t nf = cfg.anchors.size();
  const std::size_t m = cfg.branches();

  // Half the minimum pairwise anchor GH distance; exact for small anchors.
  double min_gh = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nf; ++i)
    for (std::size_t j = i + 1; j < nf; ++j) {
      const double g =
          (cfg.anchors[i].size() <= 6 && cfg.anchors[j].size() <= 6)
              ? gh_exact(cfg.anchors[i], cfg.anchors[j]).value
              : gh_lower_diam(cfg.anchors[i], cfg.anchors[j]);
      min_gh = std::min(min_gh, g);
    }
  if (!(min_gh > 0.0))
    throw std::invalid_argument(
        "select_branch: anchors are not GH-separated");

  BranchSelection sel;
  sel.threshold = min_gh / 2.0;
  sel.matches.assign(nf, std::vector<std::vector<ParamPoint>>(m));

  for (ParamPoint s : lattice(grid)) {
    if (anchor_at(s, cfg) < nf) continue;
    for (std::size_t k = 1; k <= m; ++k) {
      const MetricSpace F = build_F(s, k, cfg);
      for (std::size_t i = 0; i < nf; ++i) {
        if (gh_lower_diam(F, cfg.anchors[i]) >= sel.threshold) continue;
        if (gh_upper_greedy(F, cfg.anchors[i]).value < sel.threshold)
          sel.matches[i][k - 1].push_back(s);
      }
    }
  }

  std::vector<std::vector<std::size_t>> counts(nf,
                                               std::vector<std::size_t>(m));
  for (std::size_t i = 0; i < nf; ++i)
    for (std::size_t j = 0; j < m; ++j) counts[i][j] = sel.matches[i][j].size();
  sel.k = pick_clean_column(counts);
  return sel;
}

namespace {

double fingerprint_separation(const Fingerprint& a, const Fingerprint& b) {
  double sep = std::abs(a.K - b.K);
  const std::size_t n = std::min(a.a.size(), b.a.size());
  for (std::size_t i = 0; i < n; ++i)
    sep = std::max(sep, std::abs(a.a[i] - b.a[i]));
  return sep;
}

}  // namespace

SweepReport injectivity_sweep(const FamilyConfig& cfg, std::size_t grid,
                              std::size_t k) {
  if (grid == 0) grid = cfg.grid;
  SweepReport rep;
  const double steps = static_cast<double>(grid - 1);
  auto at = [&](std::size_t i, std::size_t j) {
    return ParamPoint{static_cast<double>(i) / steps,
                      static_cast<double>(j) / steps};
  };

  std::vector<Fingerprint> fps;
  for (std::size_t gi = 0; gi < grid; ++gi)
    for (std::size_t gj = 0; gj < grid; ++gj) {
      const ParamPoint s = at(gi, gj);
      if (anchor_at(s, cfg) < cfg.anchors.size()) continue;
      const GluedSpace D = build_D(s, k, cfg);

      SweepRow row;
      row.s = s;
      row.k = k;
      row.is_metric =
          validate(D.space,
                   {.require_metric = true, .tri_tol = kComputedTriTol})
              .valid();
      if (!row.is_metric) ++rep.metric_failures;

      // Forward lattice neighbors (step right / up), anchors included.
      if (gi + 1 < grid) {
        const GluedSpace Dt = build_D(at(gi + 1, gj), k, cfg);
        row.continuity_bound = std::max(
            row.continuity_bound, gh_upper_same_labels(D.space, Dt.space));
      }
      if (gj + 1 < grid) {
        const GluedSpace Dt = build_D(at(gi, gj + 1), k, cfg);
        row.continuity_bound = std::max(
            row.continuity_bound, gh_upper_same_labels(D.space, Dt.space));
      }
      rep.max_edge_bound = std::max(rep.max_edge_bound, row.continuity_bound);

      fps.push_back(fingerprint(spider_block(D)));
      rep.rows.push_back(row);
    }

  rep.min_separation = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < fps.size(); ++a) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < fps.size(); ++b)
      if (b != a)
        nearest = std::min(nearest, fingerprint_separation(fps[a], fps[b]));
    rep.rows[a].min_fp_sep = nearest;
    rep.min_separation = std::min(rep.min_separation, nearest);
  }
  return rep;
}

double continuity_constant(const FamilyConfig& cfg) {
  double sum_diam2 = 0.0;
  for (const auto& a : cfg.anchors) {
    const double d = a.diameter();
    sum_diam2 += d * d;
  }
  double delta_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cfg.anchor_points.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.anchor_points.size(); ++j)
      delta_min = std::min(
          delta_min, param_dist(cfg.anchor_points[i], cfg.anchor_points[j]));
  // Product part: each zeta is (1/delta_min)-Lipschitz and enters through
  // an l2 sum bounded by sqrt(sum diam^2). Spider part: xi is 1-Lipschitz
  // against a tree of diameter <= 1.5, and the leg scales move at most
  // 2^-2 per unit of s, doubled by the 2-tau bound.
  return std::sqrt(sum_diam2) / delta_min + 1.5 + 0.5;
}

double max_edge_bound(const FamilyConfig& cfg, std::size_t grid,
                      std::size_t k) {
  if (grid == 0) grid = cfg.grid;
  const double steps = static_cast<double>(grid - 1);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid; ++i)
    for (std::size_t j = 0; j < grid; ++j) {
      const ParamPoint s{static_cast<double>(i) / steps,
                         static_cast<double>(j) / steps};
      const GluedSpace Ds = build_D(s, k, cfg);
      for (int axis = 0; axis < 2; ++axis) {
        if ((axis == 0 ? i : j) + 1 >= grid) continue;
        ParamPoint t = s;
        t[axis] = static_cast<double>((axis == 0 ? i : j) + 1) / steps;
        const GluedSpace Dt = build_D(t, k, cfg);
        worst = std::max(worst, gh_upper_same_labels(Ds.space, Dt.space));
      }
    }
  return worst;
}

MetricSpace sine_curve(std::size_t n, std::size_t samples) {
  if (samples < 1) throw std::invalid_argument("sine_curve: samples < 1");
  const double x0 = std::ldexp(1.0, -static_cast<int>(n));
  std::vector<double> xs;
  if (x0 == 1.0 || samples == 1) {
    xs.push_back(x0 == 1.0 ? 1.0 : x0);
  } else {
    for (std::size_t k = 0; k < samples; ++k)
      xs.push_back(x0 + static_cast<double>(k) * (1.0 - x0) /
                            static_cast<double>(samples - 1));
  }
  const std::size_t np = xs.size();
  std::vector<std::string> labels(np);
  std::vector<double> px(np), py(np);
  for (std::size_t i = 0; i < np; ++i) {
    labels[i] = "p" + std::to_string(i);
    px[i] = xs[i];
    py[i] = std::sin(1.0 / xs[i]);
  }
  std::vector<double> d(np * np, 0.0);
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = i + 1; j < np; ++j) {
      const double v = std::hypot(px[i] - px[j], py[i] - py[j]);
      d[i * np + j] = v;
      d[j * np + i] = v;
    }
  return MetricSpace(std::move(labels), std::move(d));
}

}  // namespace ghspace
