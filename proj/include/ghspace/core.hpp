#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace ghspace {

/// Labeled point set with a symmetric distance matrix.
///
/// Entries are plain doubles; whether they satisfy the metric axioms is a
/// question for validate(), so the same type carries genuine metrics and
/// pseudo-metrics (zero off-diagonal entries allowed). Values are immutable
/// after construction.
class MetricSpace {
 public:
  // Throws std::invalid_argument on a non-square matrix or duplicate labels.
  MetricSpace(std::vector<std::string> labels, std::vector<double> dist);

  static MetricSpace from_rows(std::vector<std::string> labels,
                               const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    return dist_[i * n_ + j];
  }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<double>& data() const { return dist_; }

  /// Index of a label; throws std::invalid_argument if absent.
  std::size_t index_of(const std::string& label) const;
  bool has_label(const std::string& label) const;

  /// Max distance from point i to any point.
  double eccentricity(std::size_t i) const;
  /// Max entry of the matrix.
  double diameter() const;

  /// Induced submatrix on the given point indices (labels kept).
  MetricSpace restrict(const std::vector<std::size_t>& indices) const;

 private:
  std::vector<std::string> labels_;
  std::vector<double> dist_;
  std::size_t n_;
};

/// Alias used where zero off-diagonal entries are expected input.
using PseudoMetric = MetricSpace;

enum class Axiom {
  NonFinite,   // NaN or infinite entry (structural, not an axiom violation)
  Negative,    // entry below zero
  Diagonal,    // dist[i][i] != 0
  Symmetry,    // dist[i][j] != dist[j][i]
  Triangle,    // dist[i][j] > dist[i][k] + dist[k][j] + tol
  Identity,    // zero off-diagonal entry while a genuine metric was required
};

struct Violation {
  Axiom axiom;
  std::size_t i = 0, j = 0, k = 0;  // witness indices; k only for Triangle
  double amount = 0.0;              // size of the violation
};

struct ValidationReport {
  std::vector<Violation> violations;  // truncated to kMaxReported entries
  std::size_t total = 0;
  bool valid() const { return total == 0; }
  std::string summary() const;

  static constexpr std::size_t kMaxReported = 256;
};

struct ValidateOptions {
  bool require_metric = false;  // forbid zero off-diagonal entries
  double tri_tol = 0.0;         // absolute slack for the triangle inequality
};

/// Default triangle slack for matrices produced by floating-point
/// constructions (products, weighted sums). Hand-entered matrices are
/// checked exactly.
inline constexpr double kComputedTriTol = 1e-9;

/// Off-diagonal entries below this are snapped to exact zero before
/// quotienting; the constructions produce exact zeros analytically, so
/// anything smaller is roundoff dust.
inline constexpr double kZeroSnap = 1e-12;

/// Check the (pseudo-)metric axioms, listing every violated axiom with
/// witness indices. NonFinite entries are structural: when present the
/// remaining axioms are not evaluated.
ValidationReport validate(const MetricSpace& m, ValidateOptions opt = {});

/// Sup over entries of |d - e|. Requires identical label sequences.
double uniform_distance(const MetricSpace& d, const MetricSpace& e);

struct QuotientResult {
  MetricSpace space;
  std::vector<std::size_t> class_index;         // input point -> output point
  std::map<std::string, std::string> class_of;  // input label -> representative
};

/// Merge zero-distance classes of a pseudo-metric into a genuine metric.
/// Class representatives are the lexicographically least member label;
/// output points keep the first-occurrence order of their classes.
/// Throws std::invalid_argument if the input fails validate() at the
/// computed tolerance.
QuotientResult quotient(const MetricSpace& m);

/// Same as quotient() without the validity pre-check, for matrices that are
/// valid by construction.
QuotientResult quotient_unchecked(const MetricSpace& m);

}  // namespace ghspace
