#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "negtype/linalg.hpp"

namespace negtype {

/// A finite metric space given by its distance matrix. Construction goes
/// through validate_metric, so every instance satisfies the metric axioms
/// (triangle inequality up to 1e-12 relative to the largest distance).
class MetricSpace {
 public:
  std::size_t size() const noexcept { return dist_.rows(); }
  const Matrix& distances() const noexcept { return dist_; }
  double operator()(std::size_t i, std::size_t j) const { return dist_(i, j); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  double min_distance() const;
  double diameter() const;
  /// diam / min distance; requires at least two points.
  double scaled_diameter() const;

  /// Reorders points: point k of the result is point perm[k] of this space.
  MetricSpace permuted(std::span<const std::size_t> perm) const;
  /// Multiplies every distance by c > 0.
  MetricSpace scaled(double c) const;

 private:
  friend MetricSpace validate_metric(Matrix raw, std::vector<std::string> labels);
  MetricSpace(Matrix d, std::vector<std::string> labels)
      : dist_(std::move(d)), labels_(std::move(labels)) {}

  Matrix dist_;
  std::vector<std::string> labels_;
};

/// Relative slack allowed in the triangle inequality.
inline constexpr double kTriangleTolerance = 1e-12;

MetricSpace validate_metric(Matrix raw, std::vector<std::string> labels = {});

/// Entrywise d^p with 0^p = 0 (including p = 0) on the diagonal.
/// Throws Error{NegativeExponent} for p < 0 or non-finite p.
Matrix p_distance_matrix(const MetricSpace& space, double p);

struct NormalizedSpace {
  MetricSpace space;
  double scale;  // the original minimum distance
};

/// Divides all distances by the minimum off-diagonal distance.
NormalizedSpace normalize_scale(const MetricSpace& space);

/// n rows of n comma separated decimals, no header. Blank trailing lines
/// are ignored.
Matrix parse_distance_csv(std::istream& in);
Matrix parse_distance_csv(std::string_view text);

}  // namespace negtype
