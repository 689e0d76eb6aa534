#include <random>

#include "doctest.h"
#include "trop/exact.hpp"

using namespace trop;

namespace {

LatticeVector lv(std::initializer_list<long> xs) {
  LatticeVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntegerMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

// Oracle: gcd of all k x k minors equals d_1 * ... * d_k.
Integer minors_gcd(const IntegerMatrix& a, std::size_t k) {
  Integer g = 0;
  std::vector<std::size_t> rs(k), cs(k);
  std::function<void(std::size_t, std::size_t)> pick_cols;
  std::function<void(std::size_t, std::size_t)> pick_rows = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      pick_cols(0, 0);
      return;
    }
    for (std::size_t i = start; i < a.rows(); ++i) {
      rs[pos] = i;
      pick_rows(pos + 1, i + 1);
    }
  };
  pick_cols = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      IntegerMatrix sub(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(rs[i], cs[j]);
      Integer d = determinant(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      return;
    }
    for (std::size_t j = start; j < a.cols(); ++j) {
      cs[pos] = j;
      pick_cols(pos + 1, j + 1);
    }
  };
  pick_rows(0, 0);
  return g;
}

}  // namespace

TEST_CASE("primitive") {
  CHECK(primitive(lv({2, 4, 6})) == lv({1, 2, 3}));
  CHECK(primitive(lv({1, 0})) == lv({1, 0}));
  CHECK(primitive(lv({-3, 3})) == lv({-1, 1}));
  CHECK_THROWS_WITH_AS(primitive(lv({0, 0})), "zero vector has no primitive representative", InputError);
}

TEST_CASE("primitive is idempotent") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(-30, 30);
  for (int t = 0; t < 200; ++t) {
    LatticeVector v = lv({d(rng), d(rng), d(rng)});
    if (is_zero(v)) continue;
    LatticeVector p = primitive(v);
    CHECK(primitive(p) == p);
    CHECK(gcd_of(p) == 1);
  }
}

TEST_CASE("smith normal form examples") {
  SmithForm s = smith_normal_form(IntegerMatrix::identity(2));
  CHECK(s.d == IntegerMatrix::identity(2));
  IntegerMatrix a(2, {lv({2, 0}), lv({0, 3})});
  SmithForm t = smith_normal_form(a);
  CHECK(t.d(0, 0) == 1);
  CHECK(t.d(1, 1) == 6);
  CHECK(t.u * a * t.v == t.d);
  SmithForm z = smith_normal_form(IntegerMatrix(1, {lv({0})}));
  CHECK(z.d(0, 0) == 0);
  CHECK(z.rank == 0);
}

TEST_CASE("smith normal form reconstruction and divisibility") {
  std::mt19937_64 rng(20240501);
  std::uniform_int_distribution<int> dim(1, 4);
  for (int t = 0; t < 150; ++t) {
    const std::size_t r = dim(rng), c = dim(rng);
    IntegerMatrix a = random_matrix(rng, r, c, 6);
    SmithForm s = smith_normal_form(a);
    REQUIRE(s.u * a * s.v == s.d);
    CHECK(abs(determinant(s.u)) == 1);
    CHECK(abs(determinant(s.v)) == 1);
    Integer prod = 1;
    for (std::size_t i = 0; i < std::min(r, c); ++i) {
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) CHECK(s.d(i, j) == 0);
      CHECK(s.d(i, i) >= 0);
      if (i + 1 < std::min(r, c) && s.d(i, i) != 0) CHECK(s.d(i + 1, i + 1) % s.d(i, i) == 0);
      if (i < s.rank) {
        prod *= s.d(i, i);
        CHECK(minors_gcd(a, i + 1) == prod);
      }
    }
  }
}

TEST_CASE("hermite normal form spans the same lattice") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    IntegerMatrix a = random_matrix(rng, 3, 4, 5);
    IntegerMatrix h = hermite_normal_form(a);
    CHECK(h.rows() == rank(to_rational(a)));
    for (const auto& row : a.row_list()) {
      if (h.rows() == 0) break;
      CHECK(solve_integer(h.transpose(), row).has_value());
    }
    for (const auto& row : h.row_list()) CHECK(solve_integer(a.transpose(), row).has_value());
    CHECK(hermite_normal_form(h) == h);
  }
}

TEST_CASE("lattice index") {
  CHECK(lattice_index(2, {lv({1, 0}), lv({0, 1})}, {lv({2, 0}), lv({0, 1})}) == 2);
  CHECK(lattice_index(2, {lv({1, 0}), lv({0, 1})}, {lv({1, 0}), lv({0, 1})}) == 1);
  // Oracle for the 1-d case: index of k*u in the saturated line is |gcd(k*u)|.
  CHECK(lattice_index(2, {lv({1, 1})}, {lv({2, 2})}) == gcd_of(lv({2, 2})));
  CHECK_THROWS_WITH_AS(lattice_index(2, {lv({1, 0}), lv({0, 1})}, {lv({1, 0})}), "sublattice not finite index",
                       InputError);
}

TEST_CASE("integer kernel and solve") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 100; ++t) {
    IntegerMatrix a = random_matrix(rng, 2, 4, 4);
    auto ker = integer_kernel(a);
    CHECK(ker.size() == 4 - rank(to_rational(a)));
    for (const auto& k : ker) CHECK(is_zero(mat_apply(a, k)));
    if (!ker.empty()) CHECK(saturation_index(4, ker) == 1);
    LatticeVector x = lv({1, -2, 3, 0});
    LatticeVector b = mat_apply(a, x);
    auto y = solve_integer(a, b);
    REQUIRE(y.has_value());
    CHECK(mat_apply(a, *y) == b);
  }
  IntegerMatrix two(1, {lv({2})});
  CHECK_FALSE(solve_integer(two, lv({1})).has_value());
}

TEST_CASE("lattice quotient canonical representatives") {
  LatticeQuotient q(3, {lv({1, 1, 1})});
  CHECK(q.sublattice_rank() == 1);
  CHECK(q.in_span(lv({-2, -2, -2})));
  LatticeVector a = q.canonical(lv({-1, 0, 0}));
  CHECK(q.canonical(lv({-2, 0, 0})) == a);
  CHECK(q.canonical(lv({0, 1, 1})) == a);
  CHECK(q.canonical(lv({3, 4, 4})) == a);
  CHECK(q.canonical(lv({1, 0, 0})) != a);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int t = 0; t < 100; ++t) {
    LatticeVector v = lv({d(rng), d(rng), d(rng)});
    if (q.in_span(v)) continue;
    LatticeVector c = q.canonical(v);
    LatticeVector shifted = add(scale(3, v), scale(d(rng), lv({1, 1, 1})));
    CHECK(q.canonical(shifted) == c);
    // c is a positive multiple of v modulo the line.
    LatticeVector qc = q.quotient_coords(c), qv = q.quotient_coords(v);
    CHECK(primitive(qv) == qc);
  }
}

TEST_CASE("determinant and inverse") {
  IntegerMatrix a(2, {lv({1, 0}), lv({1, 2})});
  CHECK(determinant(a) == 2);
  CHECK_THROWS_AS(unimodular_inverse(a), InputError);
  IntegerMatrix b(2, {lv({2, 1}), lv({1, 1})});
  CHECK(b * unimodular_inverse(b) == IntegerMatrix::identity(2));
}
