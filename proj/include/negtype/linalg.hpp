#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace negtype {

using Vector = std::vector<double>;

/// Dense row-major matrix. Only meant for the small (n <= ~30) systems that
/// show up as distance matrices.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> data() const noexcept { return data_; }

  Matrix transposed() const;
  /// Largest absolute entry; 0 for an empty matrix.
  double max_abs() const noexcept;
  double frobenius() const noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);
double norm_inf(std::span<const double> x);
double norm2(std::span<const double> x);
/// x^T M x
double quadratic_form(const Matrix& m, std::span<const double> x);

/// Relative pivot threshold below which lu_det reports exact singularity.
inline constexpr double kPivotThreshold = 1e-14;

/// Determinant by LU with partial pivoting. Returns exactly 0 when a pivot
/// column has no entry above kPivotThreshold * max|M|.
double lu_det(const Matrix& m);

/// Solves m x = b. Throws Error{Singular} on pivot breakdown (same threshold
/// as lu_det).
Vector solve(const Matrix& m, std::span<const double> b);

/// det [[D, 1], [1^T, 0]]. Equals -det(D) <D^-1 1, 1> when D is invertible,
/// but stays finite and continuous where det(D) vanishes.
double bordered_det(const Matrix& d);

/// Orthonormal Helmert basis of {a : <a, 1> = 0}, as an n x (n-1) matrix.
/// Column k (0-based) is (1,...,1,-(k+1),0,...,0)/sqrt((k+1)(k+2)).
Matrix pi0_basis(std::size_t n);

/// [[D, 1], [1^T, 0]].
Matrix bordered_matrix(const Matrix& d);

/// The quadratic form of a symmetric matrix restricted to the sum-zero
/// hyperplane, expressed in the Helmert basis.
struct RestrictedForm {
  Matrix basis;  // n x (n-1)
  Matrix form;   // (n-1) x (n-1), basis^T D basis
};

RestrictedForm restrict_to_pi0(const Matrix& d);

struct SymEigen {
  Vector values;   // ascending
  Matrix vectors;  // column k belongs to values[k]
};

/// Cyclic Jacobi. Throws Error{NotSymmetric} if |S - S^T| exceeds
/// 1e-10 * max(1, max|S|).
SymEigen sym_eigen(const Matrix& s);
Vector sym_eigs(const Matrix& s);

/// min|lambda| / max|lambda| of a symmetric matrix (its reciprocal 2-norm
/// condition number); 0 for the zero matrix.
double inverse_condition(const Matrix& s);

}  // namespace negtype
