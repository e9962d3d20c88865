#include "ghspace/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ghspace {

MetricSpace::MetricSpace(std::vector<std::string> labels,
                         std::vector<double> dist)
    : labels_(std::move(labels)), dist_(std::move(dist)), n_(labels_.size()) {
  if (n_ == 0) throw std::invalid_argument("MetricSpace: empty point set");
  if (dist_.size() != n_ * n_)
    throw std::invalid_argument("MetricSpace: matrix is not " +
                                std::to_string(n_) + "x" + std::to_string(n_));
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != n_)
    throw std::invalid_argument("MetricSpace: duplicate labels");
}

MetricSpace MetricSpace::from_rows(
    std::vector<std::string> labels,
    const std::vector<std::vector<double>>& rows) {
  const std::size_t n = labels.size();
  if (rows.size() != n)
    throw std::invalid_argument("MetricSpace: row count does not match labels");
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n)
      throw std::invalid_argument("MetricSpace: ragged matrix");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return MetricSpace(std::move(labels), std::move(flat));
}

std::size_t MetricSpace::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end())
    throw std::invalid_argument("MetricSpace: no point labeled '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

bool MetricSpace::has_label(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

double MetricSpace::eccentricity(std::size_t i) const {
  double e = 0.0;
  for (std::size_t j = 0; j < n_; ++j) e = std::max(e, (*this)(i, j));
  return e;
}

double MetricSpace::diameter() const {
  return *std::max_element(dist_.begin(), dist_.end());
}

MetricSpace MetricSpace::restrict(
    const std::vector<std::size_t>& indices) const {
  std::vector<std::string> labels;
  labels.reserve(indices.size());
  for (std::size_t i : indices) labels.push_back(labels_[i]);
  std::vector<double> d(indices.size() * indices.size());
  for (std::size_t a = 0; a < indices.size(); ++a)
    for (std::size_t b = 0; b < indices.size(); ++b)
      d[a * indices.size() + b] = (*this)(indices[a], indices[b]);
  return MetricSpace(std::move(labels), std::move(d));
}

namespace {

const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::NonFinite: return "non-finite entry";
    case Axiom::Negative: return "negative entry";
    case Axiom::Diagonal: return "nonzero diagonal";
    case Axiom::Symmetry: return "asymmetry";
    case Axiom::Triangle: return "triangle inequality";
    case Axiom::Identity: return "zero distance between distinct points";
  }
  return "?";
}

void push(ValidationReport& r, Violation v) {
  ++r.total;
  if (r.violations.size() < ValidationReport::kMaxReported)
    r.violations.push_back(v);
}

}  // namespace

std::string ValidationReport::summary() const {
  if (valid()) return "valid";
  std::ostringstream os;
  os << total << " violation(s):";
  for (const auto& v : violations) {
    os << " [" << axiom_name(v.axiom) << " at (" << v.i << "," << v.j << ")";
    if (v.axiom == Axiom::Triangle) os << " via " << v.k;
    os << "]";
    if (violations.size() < total && &v == &violations.back()) os << " ...";
  }
  return os.str();
}

ValidationReport validate(const MetricSpace& m, ValidateOptions opt) {
  ValidationReport r;
  const std::size_t n = m.size();

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!std::isfinite(m(i, j)))
        push(r, {Axiom::NonFinite, i, j, 0, m(i, j)});
  if (r.total > 0) return r;  // structural; axioms are meaningless

  for (std::size_t i = 0; i < n; ++i) {
    if (m(i, i) != 0.0) push(r, {Axiom::Diagonal, i, i, 0, m(i, i)});
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m(i, j) < 0.0) push(r, {Axiom::Negative, i, j, 0, m(i, j)});
      if (m(i, j) != m(j, i))
        push(r, {Axiom::Symmetry, i, j, 0, m(i, j) - m(j, i)});
      if (opt.require_metric && m(i, j) == 0.0)
        push(r, {Axiom::Identity, i, j, 0, 0.0});
    }
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dij = m(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double detour = m(i, k) + m(k, j);
        if (dij > detour + opt.tri_tol)
          push(r, {Axiom::Triangle, i, j, k, dij - detour});
      }
    }
  return r;
}

double uniform_distance(const MetricSpace& d, const MetricSpace& e) {
  if (d.labels() != e.labels())
    throw std::invalid_argument("uniform_distance: label sets differ");
  double sup = 0.0;
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      sup = std::max(sup, std::abs(d(i, j) - e(i, j)));
  return sup;
}

namespace {

QuotientResult quotient_impl(const MetricSpace& m) {
  const std::size_t n = m.size();

  // Snap roundoff dust, then union points at exact distance zero.
  std::vector<double> snapped(m.data());
  for (double& v : snapped)
    if (v != 0.0 && std::abs(v) < kZeroSnap) v = 0.0;

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (snapped[i * n + j] == 0.0) {
        auto a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }

  // Classes in first-occurrence order; representative label is the
  // lexicographically least member.
  std::vector<std::size_t> class_index(n);
  std::vector<std::size_t> rep_point;       // one member index per class
  std::vector<std::string> rep_label;
  std::map<std::size_t, std::size_t> root_to_class;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    auto it = root_to_class.find(root);
    if (it == root_to_class.end()) {
      root_to_class.emplace(root, rep_point.size());
      class_index[i] = rep_point.size();
      rep_point.push_back(i);
      rep_label.push_back(m.label(i));
    } else {
      class_index[i] = it->second;
      if (m.label(i) < rep_label[it->second]) {
        rep_label[it->second] = m.label(i);
        rep_point[it->second] = i;
      }
    }
  }

  const std::size_t k = rep_point.size();
  std::vector<double> d(k * k, 0.0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      d[a * k + b] = snapped[rep_point[a] * n + rep_point[b]];

  QuotientResult out{MetricSpace(rep_label, std::move(d)),
                     std::move(class_index),
                     {}};
  for (std::size_t i = 0; i < n; ++i)
    out.class_of.emplace(m.label(i), rep_label[out.class_index[i]]);
  return out;
}

}  // namespace

QuotientResult quotient(const MetricSpace& m) {
  auto report = validate(m, {.require_metric = false, .tri_tol = kComputedTriTol});
  if (!report.valid())
    throw std::invalid_argument("quotient: input is not a pseudo-metric: " +
                                report.summary());
  return quotient_impl(m);
}

QuotientResult quotient_unchecked(const MetricSpace& m) {
  return quotient_impl(m);
}

}  // namespace ghspace
