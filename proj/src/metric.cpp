#include "negtype/metric.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "negtype/error.hpp"

namespace negtype {

double MetricSpace::min_distance() const {
  const std::size_t n = size();
  if (n < 2) throw Error(ErrorKind::SinglePoint, "minimum distance needs two points");
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m = std::min(m, dist_(i, j));
  return m;
}

double MetricSpace::diameter() const { return dist_.max_abs(); }

double MetricSpace::scaled_diameter() const { return diameter() / min_distance(); }

MetricSpace MetricSpace::permuted(std::span<const std::size_t> perm) const {
  const std::size_t n = size();
  if (perm.size() != n) throw Error(ErrorKind::BadSize, {perm.size()}, "permutation length");
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d(i, j) = dist_(perm[i], perm[j]);
  std::vector<std::string> labels;
  if (!labels_.empty())
    for (std::size_t k : perm) labels.push_back(labels_[k]);
  return validate_metric(std::move(d), std::move(labels));
}

MetricSpace MetricSpace::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c))
    throw Error(ErrorKind::BadArgument, "scale factor must be positive");
  Matrix d = dist_;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) d(i, j) *= c;
  return MetricSpace(std::move(d), labels_);
}

MetricSpace validate_metric(Matrix raw, std::vector<std::string> labels) {
  if (!raw.square() || raw.rows() == 0)
    throw Error(ErrorKind::NotSquare, {raw.rows(), raw.cols()}, "distance matrix must be square and non-empty");
  const std::size_t n = raw.rows();
  if (!labels.empty() && labels.size() != n)
    throw Error(ErrorKind::BadSize, {labels.size()}, "label count differs from point count");

  for (std::size_t i = 0; i < n; ++i) {
    if (raw(i, i) != 0.0) throw Error(ErrorKind::NonzeroDiagonal, {i}, "diagonal entry must be 0");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (raw(i, j) != raw(j, i))
        throw Error(ErrorKind::AsymmetricEntry, {i, j}, "d(i,j) != d(j,i)");
      if (!(raw(i, j) > 0.0) || !std::isfinite(raw(i, j)))
        throw Error(ErrorKind::NonpositiveOffDiagonal, {i, j}, "distinct points need positive finite distance");
    }
  }

  const double slack = kTriangleTolerance * raw.max_abs();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (raw(i, j) > raw(i, k) + raw(k, j) + slack)
          throw Error(ErrorKind::TriangleViolation, {i, j, k}, "d(i,j) > d(i,k) + d(k,j)");
      }
  return MetricSpace(std::move(raw), std::move(labels));
}

Matrix p_distance_matrix(const MetricSpace& space, double p) {
  if (!(p >= 0.0) || !std::isfinite(p))
    throw Error(ErrorKind::NegativeExponent, "exponent must be finite and >= 0");
  const std::size_t n = space.size();
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = std::pow(space(i, j), p);
      d(i, j) = v;
      d(j, i) = v;
    }
  return d;
}

NormalizedSpace normalize_scale(const MetricSpace& space) {
  const double s = space.min_distance();
  if (s == 1.0) return {space, 1.0};
  return {space.scaled(1.0 / s), s};
}

Matrix parse_distance_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      if (b == std::string::npos) throw Error(ErrorKind::ParseError, {lineno}, "empty cell");
      const std::string tok = cell.substr(b, e - b + 1);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw Error(ErrorKind::ParseError, {lineno}, "not a number: '" + tok + "'");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  const std::size_t n = rows.size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      throw Error(ErrorKind::NotSquare, {i + 1, rows[i].size()}, "row length differs from row count");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix parse_distance_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_distance_csv(in);
}

}  // namespace negtype
