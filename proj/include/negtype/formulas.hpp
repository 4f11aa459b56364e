#pragma once

#include <cstddef>
#include <utility>

#include "negtype/linalg.hpp"

namespace negtype::formulas {

/// log2(2nm / (2nm - n - m)) for the complete bipartite graph K_{n,m}.
/// Throws Error{BothOne} for n = m = 1.
double bipartite_pnt(std::size_t n, std::size_t m);

/// The five distinct entries of D_p^{-1} for K_{n,m}: a and b on the
/// n-block diagonal/off-diagonal, d and e on the m-block, c across.
struct BipartiteInverseEntries {
  double a, b, c, d, e;

  /// Expands back to the (n+m) x (n+m) inverse.
  Matrix expand(std::size_t n, std::size_t m) const;
};

/// Throws Error{SingularDenominator} when (n-1)(m-1)4^p is within 1e-12*nm
/// of nm (D_p is singular there).
BipartiteInverseEntries bipartite_inverse_entries(std::size_t n, std::size_t m, double p);

/// <D_p^{-1} 1, 1> for K_{n,m} in closed form.
double bipartite_inner(std::size_t n, std::size_t m, double p);

/// (n-1)^p - n^p + 2, the roundness slack of the (2,2)-simplex on the
/// (2n+1)-cycle up to a factor 1/4.
double odd_cycle_simplex_fn(std::size_t n, double p);

/// ln(1/(1-G)) / ln(D) with G = (1/ceil(n/2) + 1/floor(n/2)) / 2.
/// Throws BadSize for n < 2, BadDiameter for D <= 1.
double weston_lower_bound(std::size_t n, double scaled_diameter);

/// 1 + ln(1 + 1/((n-1)^3 (n-2))) / ln(n-1) for trees on n >= 3 vertices.
double tree_lower_bound(std::size_t n);

/// No connected path-metric graph has its supremal exponent strictly inside
/// this interval: (log2(2+sqrt 3), 2).
std::pair<double, double> gap_interval();

}  // namespace negtype::formulas
