#include "negtype/error.hpp"

#include <sstream>

namespace negtype {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::AsymmetricEntry: return "AsymmetricEntry";
    case ErrorKind::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorKind::NonpositiveOffDiagonal: return "NonpositiveOffDiagonal";
    case ErrorKind::TriangleViolation: return "TriangleViolation";
    case ErrorKind::NegativeExponent: return "NegativeExponent";
    case ErrorKind::SinglePoint: return "SinglePoint";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::BadSize: return "BadSize";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotNegativeType: return "NotNegativeType";
    case ErrorKind::InfiniteType: return "InfiniteType";
    case ErrorKind::DegenerateVector: return "DegenerateVector";
    case ErrorKind::OverlappingSimplex: return "OverlappingSimplex";
    case ErrorKind::UnnormalizedWeights: return "UnnormalizedWeights";
    case ErrorKind::BothOne: return "BothOne";
    case ErrorKind::SingularDenominator: return "SingularDenominator";
    case ErrorKind::BadDiameter: return "BadDiameter";
    case ErrorKind::BadArgument: return "BadArgument";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorKind kind, const std::vector<std::size_t>& indices,
                           const std::string& detail) {
  std::ostringstream os;
  os << to_string(kind);
  if (!indices.empty()) {
    os << '(';
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (i) os << ',';
      os << indices[i];
    }
    os << ')';
  }
  if (!detail.empty()) os << ": " << detail;
  return os.str();
}

}  // namespace

Error::Error(ErrorKind kind, std::vector<std::size_t> indices, const std::string& detail)
    : std::runtime_error(format_message(kind, indices, detail)),
      kind_(kind),
      indices_(std::move(indices)) {}

}  // namespace negtype
