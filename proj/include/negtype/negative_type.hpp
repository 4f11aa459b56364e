#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "negtype/linalg.hpp"
#include "negtype/metric.hpp"

namespace negtype {

struct PntConfig {
  double p_max = 20.0;
  double grid_step = 0.01;
  double tol_p = 1e-12;
  double tol_eig = 1e-9;
  double tol_det = 1e-9;
  /// Worker threads for the grid scan. Results do not depend on this.
  unsigned threads = 1;
};

enum class PntStatus { Finite, InfiniteBeyond };

/// Which of the two strictness conditions fails at the supremal exponent.
enum class Trigger { DetZero, InnerZero, NotApplicable };

std::string_view to_string(PntStatus s) noexcept;
std::string_view to_string(Trigger t) noexcept;

struct PntResult {
  PntStatus status = PntStatus::InfiniteBeyond;
  /// The supremal exponent when Finite, otherwise the p_max that was scanned.
  double p = 0.0;
  Trigger trigger = Trigger::NotApplicable;
  double p_lo = 0.0;
  double p_hi = 0.0;
  /// Largest eigenvalue of the sum-zero restricted form at p.
  double lambda_max = 0.0;
  double det = 0.0;
  double bordered_det = 0.0;
  /// Grid step that produced the result (smaller than the configured one
  /// when the post-bisection sign check forced a re-scan).
  double grid_step = 0.0;
  int rescans = 0;

  bool finite() const noexcept { return status == PntStatus::Finite; }
};

/// Largest eigenvalue of Q^T D Q on the sum-zero hyperplane; -inf for n = 1
/// (the hyperplane is {0}).
double restricted_lambda_max(const Matrix& dp);

/// det(D) counts as zero when inverse_condition(D) <= tol_det, and
/// <D^-1 1, 1> when the same holds for the bordered matrix instead.
bool det_vanishes(const Matrix& dp, double tol_det);
bool inner_vanishes(const Matrix& dp, double tol_det);

bool has_negative_type(const MetricSpace& space, double p, double tol_eig = 1e-9);

struct Strictness {
  bool strict = false;
  bool det_zero = false;
  bool inner_zero = false;
  double det = 0.0;
  double bordered_det = 0.0;
};

/// Both strictness conditions at p. Throws Error{NotNegativeType} when the
/// space does not have p-negative type, since the characterization only
/// applies there.
Strictness strictness(const MetricSpace& space, double p, double tol_eig = 1e-9,
                      double tol_det = 1e-9);
bool has_strict_negative_type(const MetricSpace& space, double p, double tol_eig = 1e-9,
                              double tol_det = 1e-9);

/// Locates the supremal p-negative type as the first exponent where the
/// restricted form stops being negative semidefinite.
PntResult supremal_pnt(const MetricSpace& space, const PntConfig& cfg = {});

struct WeightedPoint {
  std::size_t index;
  double weight;
};

/// A normalized two-sided weighted configuration: each side's weights sum to 1.
struct Simplex {
  std::vector<WeightedPoint> a_side;
  std::vector<WeightedPoint> b_side;
};

struct ExtremalCertificate {
  /// Sum-zero weight vector, scaled so its largest-magnitude entry is -1.
  Vector alpha;
  Simplex simplex;
  /// <D alpha, alpha> at the supremal exponent.
  double form_value = 0.0;
  /// Cross terms minus same-side terms of the simplex at the supremal exponent.
  double roundness_gap = 0.0;
};

/// Entries with |alpha_i| <= kSimplexZeroTol * max|alpha| are left out of the simplex.
inline constexpr double kSimplexZeroTol = 1e-9;

ExtremalCertificate extremal_vector(const MetricSpace& space, const PntResult& result);

/// Splits a sum-zero vector by sign into a normalized simplex.
/// Throws Error{DegenerateVector} if one side is empty.
Simplex simplex_from_vector(std::span<const double> alpha, double zero_tol = kSimplexZeroTol);

/// sum m_j n_i d(a_j,b_i)^p - sum_{j1<j2} m m d^p - sum_{i1<i2} n n d^p.
/// Throws OverlappingSimplex or UnnormalizedWeights (tolerance 1e-10).
double roundness_gap(const MetricSpace& space, const Simplex& simplex, double p);

/// Randomized check of the defining inequalities: samples sum-zero vectors
/// on random point subsets and reports false iff one gives
/// <D_p a, a> > tol * max|D_p| * |a|^2. Used by tests only.
bool negative_type_oracle(const MetricSpace& space, double p, std::size_t trials,
                          std::uint64_t seed, double tol = 1e-9);

/// The eigenvector of the restricted form with the largest eigenvalue, lifted
/// back to R^n. When negative type fails this is a deterministic violator.
Vector negative_type_witness(const MetricSpace& space, double p);

struct TraceRow {
  double p;
  double det;
  double bordered_det;
  /// <D_p^-1 1, 1>; empty where det_vanishes.
  std::optional<double> inner;
  double lambda_max;
};

/// Samples p_from, p_from + step, ... up to p_to (inclusive within step/2).
std::vector<TraceRow> trace(const MetricSpace& space, double p_from, double p_to, double step,
                            double tol_det = 1e-9);

}  // namespace negtype
