#include "ghspace/pointed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ghspace/constructions.hpp"

namespace ghspace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxViolations = 64;

std::vector<std::size_t> ball_indices(const PointedSpace& X, double R) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < X.space.size(); ++i)
    if (X.space(X.base, i) <= R) out.push_back(i);
  return out;
}

void record(RoughIsometryCert& cert, RoughViolation v) {
  if (cert.violations.size() < kMaxViolations) cert.violations.push_back(v);
  cert.verdict = false;
}

}  // namespace

RoughIsometryCert check_rough_isometry(const std::vector<std::size_t>& f,
                                       const PointedSpace& X,
                                       const PointedSpace& Y, double R,
                                       double eps) {
  if (!(eps > 0.0) || !(R > eps))
    throw std::invalid_argument("check_rough_isometry: need R > eps > 0");
  if (f.size() != X.space.size())
    throw std::invalid_argument(
        "check_rough_isometry: map table must cover every point of X");

  const auto ball = ball_indices(X, R);
  for (std::size_t i : ball)
    if (f[i] >= Y.space.size())
      throw std::invalid_argument(
          "check_rough_isometry: map undefined on ball point '" +
          X.space.label(i) + "'");

  RoughIsometryCert cert;
  cert.map = f;
  cert.R = R;
  cert.eps = eps;
  cert.verdict = true;

  const auto& d = X.space;
  const auto& e = Y.space;

  // (1) base displacement
  const double base_gap = e(f[X.base], Y.base);
  if (base_gap > eps) record(cert, {1, X.base, 0, base_gap});

  // (2) image eps-dense in the (R - eps)-ball of the target
  const double target_radius = (R == kInf) ? kInf : R - eps;
  for (std::size_t y = 0; y < e.size(); ++y) {
    if (!(e(Y.base, y) <= target_radius)) continue;
    double nearest = kInf;
    for (std::size_t i : ball) nearest = std::min(nearest, e(f[i], y));
    if (!(nearest < eps)) record(cert, {2, y, 0, nearest});
  }

  // (3) distortion on the ball
  for (std::size_t a = 0; a < ball.size(); ++a)
    for (std::size_t b = a + 1; b < ball.size(); ++b) {
      const std::size_t i = ball[a], j = ball[b];
      const double gap = std::abs(d(i, j) - e(f[i], f[j]));
      if (gap > eps) record(cert, {3, i, j, gap});
    }
  return cert;
}

AdmissibleReport check_admissible(const MetricSpace& h, const PointedSpace& X,
                                  const PointedSpace& Y, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("check_admissible: t must be > 0");
  const std::size_t nx = X.space.size(), ny = Y.space.size();
  if (h.size() != nx + ny)
    throw std::invalid_argument(
        "check_admissible: h must live on the disjoint union (X block first)");
  // Cross distances may genuinely vanish (identical glued spaces), so h is
  // only required to be a pseudo-metric; the restriction clauses pin the
  // blocks to the genuine metrics d and e.
  const auto hr =
      validate(h, {.require_metric = false, .tri_tol = kComputedTriTol});
  if (!hr.valid())
    throw std::invalid_argument(
        "check_admissible: h is not a pseudo-metric: " + hr.summary());

  constexpr double kRestrictTol = 1e-12;
  AdmissibleReport rep;

  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < nx; ++j)
      if (std::abs(h(i, j) - X.space(i, j)) > kRestrictTol) {
        rep.failed_clause = "h|X^2=d";
        rep.witness = i;
        return rep;
      }
  for (std::size_t i = 0; i < ny; ++i)
    for (std::size_t j = 0; j < ny; ++j)
      if (std::abs(h(nx + i, nx + j) - Y.space(i, j)) > kRestrictTol) {
        rep.failed_clause = "h|Y^2=e";
        rep.witness = i;
        return rep;
      }

  const std::size_t a = X.base, b = nx + Y.base;
  if (!(h(a, b) < t)) {
    rep.failed_clause = "h(a,b)<t";
    rep.witness = a;
    return rep;
  }

  const double inv_t = 1.0 / t;
  // B_h(a, 1/t) subset N_h(Y, t)
  for (std::size_t z = 0; z < h.size(); ++z) {
    if (!(h(a, z) <= inv_t)) continue;
    double nearest = kInf;
    for (std::size_t y = 0; y < ny; ++y)
      nearest = std::min(nearest, h(z, nx + y));
    if (!(nearest < t)) {
      rep.failed_clause = "B_h(a,1/t) in N_h(Y,t)";
      rep.witness = z;
      return rep;
    }
  }
  // B_h(b, 1/t) subset N_h(X, t)
  for (std::size_t z = 0; z < h.size(); ++z) {
    if (!(h(b, z) <= inv_t)) continue;
    double nearest = kInf;
    for (std::size_t x = 0; x < nx; ++x) nearest = std::min(nearest, h(z, x));
    if (!(nearest < t)) {
      rep.failed_clause = "B_h(b,1/t) in N_h(X,t)";
      rep.witness = z;
      return rep;
    }
  }

  rep.admissible = true;
  return rep;
}

MetricSpace glue_from_rough_isometry(const RoughIsometryCert& cert,
                                     const PointedSpace& X,
                                     const PointedSpace& Y) {
  if (!cert.verdict)
    throw std::invalid_argument(
        "glue_from_rough_isometry: certificate carries violations");
  const std::size_t nx = X.space.size(), ny = Y.space.size();
  const auto ball = ball_indices(X, cert.R);

  const std::size_t n = nx + ny;
  std::vector<double> h(n * n, 0.0);
  auto set = [&](std::size_t i, std::size_t j, double v) {
    h[i * n + j] = v;
    h[j * n + i] = v;
  };
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = i + 1; j < nx; ++j) set(i, j, X.space(i, j));
  for (std::size_t i = 0; i < ny; ++i)
    for (std::size_t j = i + 1; j < ny; ++j)
      set(nx + i, nx + j, Y.space(i, j));
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      double best = kInf;
      for (std::size_t z : ball)
        best = std::min(best,
                        X.space(x, z) + cert.eps + Y.space(cert.map[z], y));
      set(x, nx + y, best);
    }

  // Shortest-path closure; intra-block entries are already minimal, so the
  // restrictions are untouched.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        h[i * n + j] = std::min(h[i * n + j], h[i * n + k] + h[k * n + j]);

  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < nx; ++j)
      if (std::abs(h[i * n + j] - X.space(i, j)) > 1e-12)
        throw std::runtime_error(
            "glue_from_rough_isometry: repair broke the X restriction");
  for (std::size_t i = 0; i < ny; ++i)
    for (std::size_t j = 0; j < ny; ++j)
      if (std::abs(h[(nx + i) * n + nx + j] - Y.space(i, j)) > 1e-12)
        throw std::runtime_error(
            "glue_from_rough_isometry: repair broke the Y restriction");

  return MetricSpace(disjoint_union_labels(X.space.labels(), Y.space.labels()),
                     std::move(h));
}

double pgh_upper(const RoughIsometryCert& cert) {
  if (!cert.verdict)
    throw std::invalid_argument("pgh_upper: certificate carries violations");
  const double tail = (cert.R == kInf) ? 0.0 : 1.0 / (cert.R - cert.eps);
  return std::min(std::max(2.0 * cert.eps, tail), 0.5);
}

namespace {

// Row-major index decomposition for a product of the given factor sizes.
std::vector<std::size_t> decode(std::size_t idx,
                                const std::vector<std::size_t>& sizes) {
  std::vector<std::size_t> c(sizes.size());
  for (std::size_t i = sizes.size(); i-- > 0;) {
    c[i] = idx % sizes[i];
    idx /= sizes[i];
  }
  return c;
}

std::size_t encode(const std::vector<std::size_t>& c,
                   const std::vector<std::size_t>& sizes) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) idx = idx * sizes[i] + c[i];
  return idx;
}

}  // namespace

PointedSpace ball_product(const std::vector<PointedSpace>& spaces,
                          const std::vector<double>& radii) {
  if (spaces.size() != radii.size() || spaces.empty())
    throw std::invalid_argument("ball_product: one radius per factor");
  std::vector<MetricSpace> balls;
  std::vector<std::size_t> base(spaces.size());
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    MetricSpace b = ball_restrict(spaces[i].space, spaces[i].base_label(),
                                  radii[i]);
    base[i] = b.index_of(spaces[i].base_label());
    balls.push_back(std::move(b));
  }
  std::vector<std::size_t> sizes;
  for (const auto& b : balls) sizes.push_back(b.size());
  return {l2_product_many(balls), encode(base, sizes)};
}

ProductRoughIsometry product_rough_isometry(
    const std::vector<FactorMap>& factors, double eps) {
  if (factors.empty())
    throw std::invalid_argument("product_rough_isometry: no factors");
  std::vector<MetricSpace> xs, ys;
  std::vector<std::size_t> xsizes, ysizes, xbase, ybase;
  for (const auto& fm : factors) {
    const auto c =
        check_rough_isometry(fm.map, fm.domain, fm.target, kInf, eps);
    if (!c.verdict)
      throw std::invalid_argument(
          "product_rough_isometry: a factor map is not an (inf,eps)-rough "
          "isometry");
    xs.push_back(fm.domain.space);
    ys.push_back(fm.target.space);
    xsizes.push_back(fm.domain.space.size());
    ysizes.push_back(fm.target.space.size());
    xbase.push_back(fm.domain.base);
    ybase.push_back(fm.target.base);
  }

  PointedSpace domain{l2_product_many(xs), encode(xbase, xsizes)};
  PointedSpace target{l2_product_many(ys), encode(ybase, ysizes)};
  std::vector<std::size_t> map(domain.space.size());
  for (std::size_t idx = 0; idx < map.size(); ++idx) {
    auto c = decode(idx, xsizes);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = factors[i].map[c[i]];
    map[idx] = encode(c, ysizes);
  }
  const double slack = std::sqrt(static_cast<double>(factors.size())) * eps;
  RoughIsometryCert cert =
      check_rough_isometry(map, domain, target, kInf, slack);
  return {std::move(domain), std::move(target), std::move(map),
          std::move(cert)};
}

ProjectionRoughIsometry projection_rough_isometry(
    const std::vector<PointedSpace>& spaces, const std::vector<double>& radii,
    std::size_t factor, double R, double eps) {
  if (spaces.size() < 2)
    throw std::invalid_argument("projection_rough_isometry: need >= 2 factors");
  if (factor >= spaces.size())
    throw std::invalid_argument("projection_rough_isometry: bad factor index");

  PointedSpace product = ball_product(spaces, radii);

  // Recover each ball member's index inside its full factor via labels.
  std::vector<std::vector<std::size_t>> members(spaces.size());
  std::vector<std::size_t> sizes(spaces.size());
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    const MetricSpace ball = ball_restrict(spaces[i].space,
                                           spaces[i].base_label(), radii[i]);
    sizes[i] = ball.size();
    for (std::size_t q = 0; q < ball.size(); ++q)
      members[i].push_back(spaces[i].space.index_of(ball.label(q)));
  }

  std::vector<std::size_t> map(product.space.size());
  for (std::size_t idx = 0; idx < map.size(); ++idx)
    map[idx] = members[factor][decode(idx, sizes)[factor]];

  const double n = static_cast<double>(spaces.size() - 1);
  const double slack = 2.0 * std::sqrt(n) * eps;
  RoughIsometryCert cert =
      check_rough_isometry(map, product, spaces[factor], R, slack);
  return {std::move(product), std::move(map), std::move(cert)};
}

double sigma(std::size_t i, ParamPoint s, const FamilyConfig& cfg) {
  const double z = zeta(i, s, cfg);
  if (z == 1.0) return kInf;
  return z / (1.0 - z);
}

}  // namespace ghspace
