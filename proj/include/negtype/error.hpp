#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace negtype {

/// Every failure the library reports. The CLI prints `to_string(kind)` so
/// scripts can match on the name.
enum class ErrorKind {
  // metric_core
  NotSquare,
  AsymmetricEntry,
  NonzeroDiagonal,
  NonpositiveOffDiagonal,
  TriangleViolation,
  NegativeExponent,
  SinglePoint,
  // graph
  ParseError,
  SelfLoop,
  DuplicateEdge,
  NonpositiveWeight,
  Disconnected,
  BadSize,
  TooLarge,
  // linalg
  Singular,
  NotSymmetric,
  // negtype
  NotNegativeType,
  InfiniteType,
  DegenerateVector,
  OverlappingSimplex,
  UnnormalizedWeights,
  // formulas
  BothOne,
  SingularDenominator,
  BadDiameter,
  // cli
  BadArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::vector<std::size_t> indices, const std::string& detail);
  Error(ErrorKind kind, const std::string& detail) : Error(kind, {}, detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Offending indices (matrix entries, vertex ids or 1-based line numbers,
  /// depending on the kind).
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  ErrorKind kind_;
  std::vector<std::size_t> indices_;
};

}  // namespace negtype
