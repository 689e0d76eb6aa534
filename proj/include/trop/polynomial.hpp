#pragma once

// Sparse homogeneous integer polynomials.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "trop/exact.hpp"

namespace trop {

using Exponent = std::vector<unsigned>;

class HomPolynomial {
 public:
  // Descending lexicographic order on exponents. All terms share one degree,
  // so this is the graded lexicographic order with the leading term first.
  using TermMap = std::map<Exponent, Integer, std::greater<Exponent>>;

  HomPolynomial() = default;
  /// The zero polynomial of the given degree.
  HomPolynomial(std::size_t nvars, unsigned degree) : nvars_(nvars), degree_(degree) {}

  static HomPolynomial constant(std::size_t nvars, const Integer& c);
  static HomPolynomial variable(std::size_t nvars, std::size_t i);
  static HomPolynomial linear(const LinearForm& form);
  static HomPolynomial monomial(const Exponent& e, const Integer& c);

  std::size_t nvars() const { return nvars_; }
  unsigned degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * x^e; e must have length nvars and sum to degree.
  void add_term(const Exponent& e, const Integer& c);

  HomPolynomial operator+(const HomPolynomial& o) const;
  HomPolynomial operator-(const HomPolynomial& o) const;
  HomPolynomial operator-() const;
  HomPolynomial operator*(const HomPolynomial& o) const;
  HomPolynomial scaled(const Integer& k) const;
  bool operator==(const HomPolynomial& o) const;

  Rational eval(const RationalVector& x) const;
  Integer eval(const LatticeVector& x) const;

  /// Composition with a linear change of variables x_j = sum_i m(j, i) y_i.
  /// m has nvars rows; the result lives in m.cols() variables.
  HomPolynomial substitute(const IntegerMatrix& m) const;

  /// Exact quotient by q. Throws InputError("inexact division") when q does
  /// not divide this polynomial in Z[x].
  HomPolynomial divide_exact(const HomPolynomial& q) const;

  std::string to_string() const;

 private:
  void check_compatible(const HomPolynomial& o) const;

  std::size_t nvars_ = 0;
  unsigned degree_ = 0;
  TermMap terms_;
};

/// Product of linear forms, as a polynomial.
HomPolynomial product_of_forms(std::size_t nvars, const std::vector<LinearForm>& forms);

}  // namespace trop
