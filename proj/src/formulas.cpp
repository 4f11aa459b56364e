#include "negtype/formulas.hpp"

#include <cmath>

#include "negtype/error.hpp"

namespace negtype::formulas {

double bipartite_pnt(std::size_t n, std::size_t m) {
  if (n < 1 || m < 1) throw Error(ErrorKind::BadSize, {n, m}, "parts must be non-empty");
  if (n == 1 && m == 1) throw Error(ErrorKind::BothOne, "K_{1,1} has no finite value");
  const double nn = static_cast<double>(n), mm = static_cast<double>(m);
  return std::log2(2.0 * nn * mm / (2.0 * nn * mm - nn - mm));
}

namespace {

// (n-1)(m-1)(2^p)^2 - nm; shared by every entry and by the inner product.
double core_denominator(double n, double m, double t) {
  return (n - 1.0) * (m - 1.0) * t * t - n * m;
}

void require_regular(double n, double m, double t) {
  if (std::abs(core_denominator(n, m, t)) <= 1e-12 * n * m)
    throw Error(ErrorKind::SingularDenominator, "D_p is singular for these (n, m, p)");
}

}  // namespace

BipartiteInverseEntries bipartite_inverse_entries(std::size_t n_, std::size_t m_, double p) {
  if (n_ < 1 || m_ < 1) throw Error(ErrorKind::BadSize, {n_, m_}, "parts must be non-empty");
  const double n = static_cast<double>(n_), m = static_cast<double>(m_);
  const double t = std::exp2(p);
  require_regular(n, m, t);
  const double den = t * core_denominator(n, m, t);
  return {
      ((1.0 - m) * (n - 2.0) * t * t + m * (n - 1.0)) / den,
      ((m - 1.0) * t * t - m) / den,
      -t / den,
      ((1.0 - n) * (m - 2.0) * t * t + n * (m - 1.0)) / den,
      ((n - 1.0) * t * t - n) / den,
  };
}

Matrix BipartiteInverseEntries::expand(std::size_t n, std::size_t m) const {
  Matrix inv(n + m, n + m, c);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = i == j ? a : b;
  for (std::size_t i = n; i < n + m; ++i)
    for (std::size_t j = n; j < n + m; ++j) inv(i, j) = i == j ? d : e;
  return inv;
}

double bipartite_inner(std::size_t n_, std::size_t m_, double p) {
  const double n = static_cast<double>(n_), m = static_cast<double>(m_);
  const double t = std::exp2(p);
  require_regular(n, m, t);
  return ((2.0 * n * m - n - m) * t - 2.0 * n * m) / core_denominator(n, m, t);
}

double odd_cycle_simplex_fn(std::size_t n, double p) {
  if (n < 2) throw Error(ErrorKind::BadSize, {n}, "needs n >= 2");
  const double nn = static_cast<double>(n);
  return std::pow(nn - 1.0, p) - std::pow(nn, p) + 2.0;
}

double weston_lower_bound(std::size_t n, double scaled_diameter) {
  if (n < 2) throw Error(ErrorKind::BadSize, {n}, "needs n >= 2");
  if (!(scaled_diameter > 1.0))
    throw Error(ErrorKind::BadDiameter, "scaled diameter must exceed 1 (equilateral spaces have no finite bound)");
  const double hi = static_cast<double>((n + 1) / 2);
  const double lo = static_cast<double>(n / 2);
  const double gamma = 0.5 * (1.0 / hi + 1.0 / lo);
  return std::log(1.0 / (1.0 - gamma)) / std::log(scaled_diameter);
}

double tree_lower_bound(std::size_t n) {
  if (n < 3) throw Error(ErrorKind::BadSize, {n}, "tree bound needs n >= 3");
  const double k = static_cast<double>(n - 1);
  return 1.0 + std::log1p(1.0 / (k * k * k * (k - 1.0))) / std::log(k);
}

std::pair<double, double> gap_interval() { return {std::log2(2.0 + std::sqrt(3.0)), 2.0}; }

}  // namespace negtype::formulas
