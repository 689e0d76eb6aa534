#include "trop/exact.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace trop {

Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  if (a.size() != b.size()) throw InputError("dot: dimension mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(std::span<const Integer> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw InputError("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer gcd_of(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

bool is_zero(std::span<const Integer> v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

LatticeVector add(const LatticeVector& a, const LatticeVector& b) {
  if (a.size() != b.size()) throw InputError("add: dimension mismatch");
  LatticeVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

LatticeVector sub(const LatticeVector& a, const LatticeVector& b) {
  if (a.size() != b.size()) throw InputError("sub: dimension mismatch");
  LatticeVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

LatticeVector scale(const Integer& k, const LatticeVector& a) {
  LatticeVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = k * a[i];
  return r;
}

LatticeVector negate(const LatticeVector& a) { return scale(-1, a); }

RationalVector to_rational(const LatticeVector& v) { return RationalVector(v.begin(), v.end()); }

LatticeVector primitive(const LatticeVector& v) {
  Integer g = gcd_of(v);
  if (g == 0) throw InputError("zero vector has no primitive representative");
  LatticeVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) mpz_divexact(r[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
  return r;
}

LatticeVector primitive_from_rational(const RationalVector& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  LatticeVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].get_num() * (l / v[i].get_den());
  return primitive(r);
}

LatticeVector mat_apply(const IntegerMatrix& m, const LatticeVector& v) {
  if (m.cols() != v.size()) throw InputError("apply: dimension mismatch");
  LatticeVector r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
  return r;
}

// ---------------------------------------------------------------------------

namespace {

void swap_rows(IntegerMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntegerMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row_dst -= q * row_src
void add_row(IntegerMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= q * m(src, j);
}

// col_dst -= q * col_src
void add_col(IntegerMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
}

Integer tdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer fdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IntegerMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithForm s{a, IntegerMatrix::identity(m), IntegerMatrix::identity(n), 0};
  IntegerMatrix& d = s.d;
  std::size_t t = 0;
  while (t < std::min(m, n)) {
    // Pivot: smallest nonzero absolute value in the trailing block.
    bool found = false;
    std::size_t pi = t, pj = t;
    Integer best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (d(i, j) == 0) continue;
        Integer av = abs(d(i, j));
        if (!found || av < best) {
          found = true;
          best = av;
          pi = i;
          pj = j;
        }
      }
    if (!found) break;
    swap_rows(d, t, pi);
    swap_rows(s.u, t, pi);
    swap_cols(d, t, pj);
    swap_cols(s.v, t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = tdiv(d(i, t), d(t, t));
        add_row(d, i, t, q);
        add_row(s.u, i, t, q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = tdiv(d(t, j), d(t, t));
        add_col(d, j, t, q);
        add_col(s.v, j, t, q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot survived; move it to the pivot.
        std::size_t bi = t, bj = t;
        Integer bv = abs(d(t, t));
        for (std::size_t i = t + 1; i < m; ++i)
          if (d(i, t) != 0 && abs(d(i, t)) < bv) {
            bv = abs(d(i, t));
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(t, j) != 0 && abs(d(t, j)) < bv) {
            bv = abs(d(t, j));
            bi = t;
            bj = j;
          }
        swap_rows(d, t, bi);
        swap_rows(s.u, t, bi);
        swap_cols(d, t, bj);
        swap_cols(s.v, t, bj);
        continue;
      }
      // Divisibility chain: the pivot must divide the whole trailing block.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            add_row(d, t, i, -1);
            add_row(s.u, t, i, -1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < m; ++j) s.u(t, j) = -s.u(t, j);
    }
    ++t;
  }
  s.rank = t;
  return s;
}

IntegerMatrix hermite_normal_form(const IntegerMatrix& a) {
  IntegerMatrix h = a;
  const std::size_t m = h.rows();
  const std::size_t n = h.cols();
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    // Euclid on column c among rows r..m-1.
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i)
        if (h(i, c) != 0 && (best == m || abs(h(i, c)) < abs(h(best, c)))) best = i;
      if (best == m) break;
      swap_rows(h, r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h(i, c) == 0) continue;
        add_row(h, i, r, tdiv(h(i, c), h(r, c)));
        if (h(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0)
      for (std::size_t j = 0; j < n; ++j) h(r, j) = -h(r, j);
    for (std::size_t i = 0; i < r; ++i) add_row(h, i, r, fdiv(h(i, c), h(r, c)));
    pivots.push_back(c);
    ++r;
  }
  IntegerMatrix out(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = h(i, j);
  return out;
}

IntegerMatrix saturate(std::size_t n, const std::vector<LatticeVector>& rows) {
  if (rows.empty()) return IntegerMatrix(0, n);
  IntegerMatrix a(n, rows);
  SmithForm s = smith_normal_form(a);
  // Rows of A live in span of the first `rank` rows of V^{-1}; those rows form
  // a basis of the saturation because V^{-1} is unimodular.
  IntegerMatrix vinv = unimodular_inverse(s.v);
  IntegerMatrix basis(s.rank, n);
  for (std::size_t i = 0; i < s.rank; ++i)
    for (std::size_t j = 0; j < n; ++j) basis(i, j) = vinv(i, j);
  return hermite_normal_form(basis);
}

std::vector<LatticeVector> integer_kernel(const IntegerMatrix& a) {
  SmithForm s = smith_normal_form(a);
  std::vector<LatticeVector> ker;
  for (std::size_t j = s.rank; j < a.cols(); ++j) ker.push_back(s.v.col(j));
  return ker;
}

std::optional<LatticeVector> solve_integer(const IntegerMatrix& a, const LatticeVector& b) {
  if (b.size() != a.rows()) throw InputError("solve_integer: dimension mismatch");
  SmithForm s = smith_normal_form(a);
  LatticeVector ub = mat_apply(s.u, b);
  LatticeVector y(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i < s.rank) {
      if (ub[i] % s.d(i, i) != 0) return std::nullopt;
      y[i] = ub[i] / s.d(i, i);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return mat_apply(s.v, y);
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

std::optional<RationalVector> solve_rational(const RationalMatrix& a, const RationalVector& b) {
  if (b.size() != a.rows()) throw InputError("solve_rational: dimension mismatch");
  RationalMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  RationalVector x(a.cols());
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, a.cols());
  return x;
}

std::size_t rank(const RationalMatrix& a) {
  RationalMatrix m = a;
  return rref(m).size();
}

RationalMatrix to_rational(const IntegerMatrix& a) {
  RationalMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  return r;
}

std::size_t rank_of(std::size_t n, const std::vector<LatticeVector>& rows) {
  if (rows.empty()) return 0;
  return rank(to_rational(IntegerMatrix(n, rows)));
}

RationalMatrix inverse(const RationalMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw InputError("inverse: matrix not square");
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] >= n) throw InputError("inverse: singular matrix");
  RationalMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

IntegerMatrix unimodular_inverse(const IntegerMatrix& a) {
  RationalMatrix inv = inverse(to_rational(a));
  IntegerMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (inv(i, j).get_den() != 1) throw InputError("matrix is not unimodular");
      r(i, j) = inv(i, j).get_num();
    }
  return r;
}

Integer determinant(const IntegerMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw InputError("determinant: matrix not square");
  RationalMatrix m = to_rational(a);
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det.get_num();
}

Integer saturation_index(std::size_t n, const std::vector<LatticeVector>& generators) {
  if (generators.empty()) return 1;
  SmithForm s = smith_normal_form(IntegerMatrix(n, generators));
  Integer idx = 1;
  for (std::size_t i = 0; i < s.rank; ++i) idx *= s.d(i, i);
  return idx;
}

Integer lattice_index(std::size_t n, const std::vector<LatticeVector>& generators,
                      const std::vector<LatticeVector>& sub_generators) {
  const std::size_t r = rank_of(n, generators);
  const std::size_t rs = rank_of(n, sub_generators);
  std::vector<LatticeVector> all = generators;
  all.insert(all.end(), sub_generators.begin(), sub_generators.end());
  if (r != rs || rank_of(n, all) != r) throw InputError("sublattice not finite index");
  return saturation_index(n, sub_generators);
}

// ---------------------------------------------------------------------------

LatticeQuotient::LatticeQuotient(std::size_t n, const std::vector<LatticeVector>& sublattice)
    : n_(n), basis_(saturate(n, sublattice)) {
  if (basis_.rows() == 0) {
    to_adapted_ = IntegerMatrix::identity(n);
    from_adapted_ = IntegerMatrix::identity(n);
    return;
  }
  SmithForm s = smith_normal_form(basis_);
  // basis_ * V = U^{-1} [I 0]: in coordinates y = x V the sublattice is
  // exactly Z^r x 0 (all invariant factors are 1 for a saturated lattice).
  to_adapted_ = s.v;
  from_adapted_ = unimodular_inverse(s.v);
}

LatticeVector LatticeQuotient::quotient_coords(const LatticeVector& v) const {
  const std::size_t r = basis_.rows();
  LatticeVector q(n_ - r);
  for (std::size_t j = r; j < n_; ++j)
    for (std::size_t i = 0; i < n_; ++i) q[j - r] += v[i] * to_adapted_(i, j);
  return q;
}

LatticeVector LatticeQuotient::lift(const LatticeVector& q) const {
  const std::size_t r = basis_.rows();
  LatticeVector x(n_);
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (q[j] == 0) continue;
    for (std::size_t i = 0; i < n_; ++i) x[i] += q[j] * from_adapted_(r + j, i);
  }
  return reduce(x);
}

LatticeVector LatticeQuotient::reduce(const LatticeVector& v) const {
  LatticeVector w = v;
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    std::size_t c = 0;
    while (basis_(i, c) == 0) ++c;
    Integer q = fdiv(w[c], basis_(i, c));
    if (q == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) w[j] -= q * basis_(i, j);
  }
  return w;
}

LatticeVector LatticeQuotient::canonical(const LatticeVector& v) const {
  LatticeVector q = quotient_coords(v);
  if (is_zero(q)) throw InputError("vector lies in the lineality space");
  return lift(primitive(q));
}

bool LatticeQuotient::in_span(const LatticeVector& v) const { return is_zero(quotient_coords(v)); }

std::string to_string(const LatticeVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

}  // namespace trop
