#pragma once

// Exact integer/rational arithmetic and lattice linear algebra.
//
// Vectors are plain sequences of GMP numbers. Matrices are dense, row-major.
// Every routine is exact; nothing here ever touches floating point.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace trop {

using Integer = mpz_class;
using Rational = mpq_class;

/// A point of the ambient lattice Z^n.
using LatticeVector = std::vector<Integer>;
/// A point of Q^n (used for interior points and evaluation).
using RationalVector = std::vector<Rational>;
/// Integer linear form in dual-lattice coordinates.
using LinearForm = std::vector<Integer>;

/// Thrown when an input violates a documented precondition.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a mathematical invariant that should hold by theory fails.
/// This always means an implementation bug or inconsistent (unbalanced,
/// discontinuous, ...) input that slipped past validation.
class InvariantError : public std::runtime_error {
 public:
  explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t cols, const std::vector<std::vector<T>>& rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const;
  std::vector<T> col(std::size_t j) const;
  std::vector<std::vector<T>> row_list() const;

  Matrix transpose() const;
  Matrix operator*(const Matrix& other) const;
  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntegerMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

template <typename T>
Matrix<T>::Matrix(std::size_t cols, const std::vector<std::vector<T>>& rows)
    : rows_(rows.size()), cols_(cols), data_(rows.size() * cols) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) (*this)(i, j) = rows[i][j];
  }
}

template <typename T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

template <typename T>
std::vector<T> Matrix<T>::row(std::size_t i) const {
  return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

template <typename T>
std::vector<T> Matrix<T>::col(std::size_t j) const {
  std::vector<T> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

template <typename T>
std::vector<std::vector<T>> Matrix<T>::row_list() const {
  std::vector<std::vector<T>> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

template <typename T>
Matrix<T> Matrix<T>::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

template <typename T>
Matrix<T> Matrix<T>::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw InputError("matrix dimension mismatch");
  Matrix p(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const T& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) p(i, j) += a * other(k, j);
    }
  return p;
}

// ---------------------------------------------------------------------------
// Vector helpers

Integer dot(std::span<const Integer> a, std::span<const Integer> b);
Rational dot(std::span<const Integer> a, std::span<const Rational> b);
Integer gcd_of(std::span<const Integer> v);
bool is_zero(std::span<const Integer> v);
LatticeVector add(const LatticeVector& a, const LatticeVector& b);
LatticeVector sub(const LatticeVector& a, const LatticeVector& b);
LatticeVector scale(const Integer& k, const LatticeVector& a);
LatticeVector negate(const LatticeVector& a);
RationalVector to_rational(const LatticeVector& v);

/// Divides v by the gcd of its coordinates.
LatticeVector primitive(const LatticeVector& v);

/// Clears denominators and returns the primitive integer vector on the same
/// ray as v (v must be nonzero).
LatticeVector primitive_from_rational(const RationalVector& v);

/// Image of v under the integer matrix acting on column vectors.
LatticeVector mat_apply(const IntegerMatrix& m, const LatticeVector& v);

// ---------------------------------------------------------------------------
// Normal forms

struct SmithForm {
  IntegerMatrix d;  // diagonal, d_1 | d_2 | ..., non-negative
  IntegerMatrix u;  // unimodular, rows x rows
  IntegerMatrix v;  // unimodular, cols x cols
  std::size_t rank = 0;
};

/// Computes U, V unimodular with U * A * V = D (classical row/column
/// reduction, minimal-absolute-value pivots).
SmithForm smith_normal_form(const IntegerMatrix& a);

/// Row-style Hermite normal form of the lattice spanned by the rows of a:
/// echelon, positive pivots, entries above each pivot reduced into
/// [0, pivot). Zero rows are dropped.
IntegerMatrix hermite_normal_form(const IntegerMatrix& a);

/// Basis (in Hermite normal form) of the saturated lattice Z^n ∩ span(rows).
IntegerMatrix saturate(std::size_t n, const std::vector<LatticeVector>& rows);

/// Saturated basis of {x in Z^n : a x = 0}, one vector per entry.
std::vector<LatticeVector> integer_kernel(const IntegerMatrix& a);

/// Some integer solution of a x = b, if one exists.
std::optional<LatticeVector> solve_integer(const IntegerMatrix& a, const LatticeVector& b);

/// Some rational solution of a x = b, if one exists.
std::optional<RationalVector> solve_rational(const RationalMatrix& a, const RationalVector& b);

std::size_t rank(const RationalMatrix& a);
std::size_t rank_of(std::size_t n, const std::vector<LatticeVector>& rows);
RationalMatrix to_rational(const IntegerMatrix& a);

/// Inverse of a square invertible rational matrix.
RationalMatrix inverse(const RationalMatrix& a);

/// Inverse of a unimodular integer matrix (throws if not unimodular).
IntegerMatrix unimodular_inverse(const IntegerMatrix& a);

/// Determinant, exact.
Integer determinant(const IntegerMatrix& a);

/// Index of the lattice spanned by `sub_generators` inside the saturation of
/// the lattice spanned by `generators`. Both must span the same subspace.
Integer lattice_index(std::size_t n, const std::vector<LatticeVector>& generators,
                      const std::vector<LatticeVector>& sub_generators);

/// Index of the lattice spanned by `generators` in its own saturation
/// (product of the nonzero invariant factors).
Integer saturation_index(std::size_t n, const std::vector<LatticeVector>& generators);

/// Canonical coordinates for Z^n modulo a saturated sublattice S.
///
/// canonical(v) returns the representative of the primitive class of v in
/// Z^n / S, reduced against the Hermite basis of S. Two vectors spanning the
/// same ray in the quotient get the same representative.
class LatticeQuotient {
 public:
  LatticeQuotient(std::size_t n, const std::vector<LatticeVector>& sublattice);

  std::size_t ambient_dim() const { return n_; }
  std::size_t sublattice_rank() const { return basis_.rows(); }
  const IntegerMatrix& basis() const { return basis_; }

  /// Coordinates of v in Z^n/S ≅ Z^(n - rank S).
  LatticeVector quotient_coords(const LatticeVector& v) const;
  /// A lift of quotient coordinates back to Z^n (reduced mod S).
  LatticeVector lift(const LatticeVector& q) const;
  /// Reduces v modulo S to the unique Hermite-reduced coset representative.
  LatticeVector reduce(const LatticeVector& v) const;
  /// Reduced representative of the primitive class of v (v not in S ⊗ Q).
  LatticeVector canonical(const LatticeVector& v) const;
  bool in_span(const LatticeVector& v) const;

 private:
  std::size_t n_;
  IntegerMatrix basis_;  // Hermite normal form of S
  IntegerMatrix to_adapted_;    // x -> x * to_adapted_ puts S on the first coords
  IntegerMatrix from_adapted_;  // inverse of to_adapted_
};

std::string to_string(const LatticeVector& v);

}  // namespace trop
