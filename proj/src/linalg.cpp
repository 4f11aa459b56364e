#include "negtype/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "negtype/error.hpp"

namespace negtype {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::NotSquare, "ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::frobenius() const noexcept {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm_inf(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

double quadratic_form(const Matrix& m, std::span<const double> x) {
  return dot(m * x, x);
}

namespace {

struct LuResult {
  Matrix lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  bool singular = false;
};

// In-place Doolittle LU with partial pivoting. `threshold` is absolute; a
// pivot at or below it marks the factorization singular and stops.
LuResult lu_factor(Matrix m, double threshold) {
  const std::size_t n = m.rows();
  LuResult r{std::move(m), std::vector<std::size_t>(n), 1, false};
  std::iota(r.perm.begin(), r.perm.end(), std::size_t{0});
  Matrix& a = r.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        piv = i;
      }
    }
    if (best <= threshold) {
      r.singular = true;
      return r;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(r.perm[k], r.perm[piv]);
      r.sign = -r.sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      a(i, k) = f;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return r;
}

double product_of_pivots(const LuResult& r) {
  double det = r.sign;
  for (std::size_t k = 0; k < r.lu.rows(); ++k) det *= r.lu(k, k);
  return det;
}

void require_square(const Matrix& m) {
  if (!m.square()) throw Error(ErrorKind::NotSquare, {m.rows(), m.cols()}, "matrix must be square");
}

}  // namespace

double lu_det(const Matrix& m) {
  require_square(m);
  if (m.rows() == 0) return 1.0;
  auto r = lu_factor(m, kPivotThreshold * m.max_abs());
  return r.singular ? 0.0 : product_of_pivots(r);
}

Vector solve(const Matrix& m, std::span<const double> b) {
  require_square(m);
  const std::size_t n = m.rows();
  if (b.size() != n) throw Error(ErrorKind::NotSquare, {n, b.size()}, "rhs length mismatch");
  auto r = lu_factor(m, kPivotThreshold * m.max_abs());
  if (r.singular) throw Error(ErrorKind::Singular, "pivot breakdown in solve");
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[r.perm[i]];
    for (std::size_t j = 0; j < i; ++j) s -= r.lu(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= r.lu(i, j) * x[j];
    x[i] = s / r.lu(i, i);
  }
  return x;
}

Matrix bordered_matrix(const Matrix& d) {
  require_square(d);
  const std::size_t n = d.rows();
  Matrix b(n + 1, n + 1, 1.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = d(i, j);
  b(n, n) = 0.0;
  return b;
}

double bordered_det(const Matrix& d) {
  // No relative cutoff: the surrogate must stay continuous through det(D) = 0.
  auto r = lu_factor(bordered_matrix(d), 0.0);
  return r.singular ? 0.0 : product_of_pivots(r);
}

double inverse_condition(const Matrix& s) {
  const Vector ev = sym_eigs(s);
  if (ev.empty()) return 1.0;
  double lo = std::abs(ev[0]), hi = lo;
  for (double e : ev) {
    lo = std::min(lo, std::abs(e));
    hi = std::max(hi, std::abs(e));
  }
  return hi == 0.0 ? 0.0 : lo / hi;
}

Matrix pi0_basis(std::size_t n) {
  if (n < 2) throw Error(ErrorKind::BadSize, {n}, "sum-zero basis needs n >= 2");
  Matrix q(n, n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double len = static_cast<double>(k + 1);
    const double scale = 1.0 / std::sqrt(len * (len + 1.0));
    for (std::size_t i = 0; i <= k; ++i) q(i, k) = scale;
    q(k + 1, k) = -len * scale;
  }
  return q;
}

RestrictedForm restrict_to_pi0(const Matrix& d) {
  require_square(d);
  Matrix q = pi0_basis(d.rows());
  Matrix f = q.transposed() * (d * q);
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = i + 1; j < f.cols(); ++j) {
      const double s = 0.5 * (f(i, j) + f(j, i));
      f(i, j) = s;
      f(j, i) = s;
    }
  return {std::move(q), std::move(f)};
}

SymEigen sym_eigen(const Matrix& s) {
  require_square(s);
  const std::size_t n = s.rows();
  const double sym_tol = 1e-10 * std::max(1.0, s.max_abs());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(s(i, j) - s(j, i)) > sym_tol)
        throw Error(ErrorKind::NotSymmetric, {i, j}, "input to sym_eigen is not symmetric");

  Matrix a = s;
  Matrix v = Matrix::identity(n);
  const double target = 1e-13 * s.frobenius();

  auto off_norm = [&] {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) acc += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(acc);
  };

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_norm() > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle chosen so that the (p,q) entry vanishes; the smaller
        // root of t^2 + 2 theta t - 1 = 0 keeps |angle| <= pi/4.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        const double tau = sn / (1.0 + c);

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = a(p, k) = akp - sn * (akq + tau * akp);
          a(k, q) = a(q, k) = akq + sn * (akp - tau * akq);
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = vkp - sn * (vkq + tau * vkp);
          v(k, q) = vkq + sn * (vkp - tau * vkq);
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  SymEigen out{Vector(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

Vector sym_eigs(const Matrix& s) { return sym_eigen(s).values; }

}  // namespace negtype
