#pragma once

// Worked examples shared by the unit tests and the acceptance suite.

#include <map>
#include <set>

#include "generators.hpp"
#include "trop/matroid.hpp"
#include "trop/pwpoly.hpp"

namespace trop::testing {

inline HomPolynomial poly2(std::initializer_list<std::pair<Exponent, long>> terms, std::size_t n, unsigned deg) {
  HomPolynomial p(n, deg);
  for (const auto& [e, c] : terms) p.add_term(e, c);
  return p;
}

/// Cones <-e1, e1+e2>, <-e2, e1+e2>, <-e1, -e2>.
inline Fan tri_fan() {
  return Fan::from_maximal_cones(2, {Cone::from_rays(2, {lv({-1, 0}), lv({1, 1})}),
                                     Cone::from_rays(2, {lv({0, -1}), lv({1, 1})}),
                                     Cone::from_rays(2, {lv({-1, 0}), lv({0, -1})})});
}

/// (max{x,y,0})^2 on tri_fan: y^2, x^2, 0.
inline PiecewisePolynomial tri_square() {
  Fan f = tri_fan();
  std::map<std::size_t, HomPolynomial> pieces;
  pieces.emplace(f.index_of(Cone::from_rays(2, {lv({-1, 0}), lv({1, 1})})), poly2({{{0, 2}, 1}}, 2, 2));
  pieces.emplace(f.index_of(Cone::from_rays(2, {lv({0, -1}), lv({1, 1})})), poly2({{{2, 0}, 1}}, 2, 2));
  pieces.emplace(f.index_of(Cone::from_rays(2, {lv({-1, 0}), lv({0, -1})})), HomPolynomial(2, 2));
  return PiecewisePolynomial(f, 2, pieces);
}

inline RationalFanFunction max_xy0() { return from_tropical_polynomial(2, {lv({1, 0}), lv({0, 1}), lv({0, 0})}); }
inline RationalFanFunction max_xy() { return from_tropical_polynomial(2, {lv({1, 0}), lv({0, 1})}); }

inline const LatticeVector l32_a() { return lv({-1, -1, 0}); }
inline const LatticeVector l32_b() { return lv({1, 1, 1}); }
inline const LatticeVector l32_c() { return lv({1, 1, 0}); }

struct L32Cone {
  std::vector<LatticeVector> rays;
  HomPolynomial piece;
};

/// The refined plane fan with rays -e1, -e2, -e3, a, b, c and the degree-2
/// degree-2 pieces used throughout the tests.
inline std::vector<L32Cone> l32_data() {
  LatticeVector a = l32_a(), b = l32_b(), c = l32_c();
  LatticeVector e1 = lv({-1, 0, 0}), e2 = lv({0, -1, 0}), e3 = lv({0, 0, -1});
  auto m = [](std::initializer_list<std::pair<Exponent, long>> t) { return poly2(t, 3, 2); };
  return {
      {{e1, b}, m({{{1, 1, 0}, 1}})},
      {{e2, b}, m({{{2, 0, 0}, 1}})},
      {{b, c}, m({{{1, 0, 1}, 1}})},
      {{c, e3}, m({{{1, 0, 1}, 2}})},
      {{e2, e3}, m({{{0, 1, 1}, 1}})},
      {{e1, e3}, m({{{1, 0, 1}, 1}})},
      {{a, e2}, m({{{2, 0, 0}, 2}})},
      {{e1, a}, m({{{0, 2, 0}, 1}, {{1, 1, 0}, 1}})},
  };
}

inline Fan l32_fan() {
  std::vector<Cone> cs;
  for (const auto& d : l32_data()) cs.push_back(Cone::from_rays(3, d.rays));
  return Fan::from_maximal_cones(3, cs);
}

inline TropicalCycle l32_cycle() { return TropicalCycle::uniform(l32_fan()); }

inline PiecewisePolynomial l32_f() {
  Fan f = l32_fan();
  std::map<std::size_t, HomPolynomial> pieces;
  for (const auto& d : l32_data()) pieces.emplace(f.index_of(Cone::from_rays(3, d.rays)), d.piece);
  return PiecewisePolynomial(f, 2, pieces);
}

/// The maximal cones s1..s4 carrying Ψ terms in the reference representation.
inline std::vector<Cone> l32_sigmas() {
  LatticeVector e1 = lv({-1, 0, 0}), e2 = lv({0, -1, 0}), e3 = lv({0, 0, -1});
  return {Cone::from_rays(3, {e1, l32_a()}), Cone::from_rays(3, {e1, e3}), Cone::from_rays(3, {e2, e3}),
          Cone::from_rays(3, {l32_c(), e3})};
}

/// -2x Ψ_a + x Ψ_b - Ψ_s1 + Ψ_s2 + Ψ_s3 - 2 Ψ_s4 on the plane fan.
inline PiecewisePolynomial l32_expected_representation() {
  Fan f = l32_fan();
  HomPolynomial x = HomPolynomial::variable(3, 0);
  auto psi = [&](const LatticeVector& r) { return psi_cone(f, Cone::from_rays(3, {r})); };
  auto times = [&](const HomPolynomial& p, const PiecewisePolynomial& q) {
    return pp_mul(PiecewisePolynomial::global(f, p), q);
  };
  auto s = l32_sigmas();
  PiecewisePolynomial out = times(x.scaled(-2), psi(l32_a()));
  out = pp_add(out, times(x, psi(l32_b())));
  out = pp_add(out, pp_scale(-1, psi_cone(f, s[0])));
  out = pp_add(out, psi_cone(f, s[1]));
  out = pp_add(out, psi_cone(f, s[2]));
  out = pp_add(out, pp_scale(-2, psi_cone(f, s[3])));
  return out;
}

inline TropicalCycle origin_cycle(std::size_t n, const Integer& w) {
  return TropicalCycle::from_compatible_cones(n, 0, {{Cone::from_rays(n, {}), w}});
}

/// Cone-wise linear function with random values at the rays.
inline RationalFanFunction random_ray_function(const Fan& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> v(-3, 3);
  std::vector<Integer> vals;
  for (std::size_t i = 0; i < f.rays().size(); ++i) vals.emplace_back(v(rng));
  return RationalFanFunction::from_ray_values(f, vals);
}

/// Sum of three random Ψ monomials times random products of linear forms.
inline PiecewisePolynomial random_pp(const Fan& f, unsigned k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-2, 2);
  std::uniform_int_distribution<std::size_t> ray(0, f.rays().size() - 1);
  const std::size_t n = f.ambient_dim();
  PiecewisePolynomial out = PiecewisePolynomial::zero(f, k);
  for (int t = 0; t < 3; ++t) {
    unsigned j = 1 + static_cast<unsigned>(rng() % k);
    std::vector<std::size_t> rs;
    for (unsigned i = 0; i < j; ++i) rs.push_back(ray(rng));
    HomPolynomial g = HomPolynomial::constant(n, c(rng));
    for (unsigned i = j; i < k; ++i) {
      LinearForm l(n);
      for (auto& x : l) x = c(rng);
      g = g * HomPolynomial::linear(l);
    }
    out = pp_add(out, pp_mul(PiecewisePolynomial::global(f, g), psi_monomial(f, rs)));
  }
  return out;
}

/// Random lattice point in the support: a nonnegative combination of the
/// rays of a random maximal cone plus a lineality part.
inline LatticeVector support_point(const Fan& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, f.maximal().size() - 1);
  std::uniform_int_distribution<int> c(0, 4), l(-4, 4);
  const Cone& s = f.cone(f.maximal()[pick(rng)]);
  LatticeVector p(f.ambient_dim(), 0);
  for (const auto& r : s.rays()) p = add(p, scale(c(rng), r));
  for (const auto& v : s.lineality()) p = add(p, scale(l(rng), v));
  return p;
}

/// Basis of the lattice of functions linear on the cones of trop(M) whose
/// divisor vanishes, as (ray values, lineality values) of the fan.
inline std::vector<RayValues> zero_divisor_basis(const Matroid& m) {
  const Fan fan = bergman_fan(m).fan();
  const std::size_t nr = fan.rays().size(), nl = fan.lineality().size();
  std::vector<std::map<Cone, Integer>> cols;
  std::set<Cone> rows;
  for (std::size_t j = 0; j < nr + nl; ++j) {
    std::vector<Integer> rv(nr, 0), lv(nl, 0);
    (j < nr ? rv[j] : lv[j - nr]) = 1;
    std::map<Cone, Integer> col;
    for (const auto& [c, w] : divisor(RationalFanFunction::from_ray_values(fan, rv, lv), bergman_fan(m)).weighted_cones()) {
      col[c] = w;
      rows.insert(c);
    }
    cols.push_back(col);
  }
  IntegerMatrix a(rows.size(), nr + nl);
  std::size_t i = 0;
  for (const auto& c : rows) {
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (cols[j].count(c)) a(i, j) = cols[j].at(c);
    ++i;
  }
  std::vector<RayValues> out;
  for (const auto& k : (rows.empty() ? std::vector<LatticeVector>{} : integer_kernel(a))) {
    RayValues v;
    v.rays.assign(k.begin(), k.begin() + static_cast<long>(nr));
    v.lineality.assign(k.begin() + static_cast<long>(nr), k.end());
    out.push_back(v);
  }
  if (rows.empty())
    for (std::size_t j = 0; j < nr + nl; ++j) {
      RayValues v{std::vector<Integer>(nr, 0), std::vector<Integer>(nl, 0)};
      (j < nr ? v.rays[j] : v.lineality[j - nr]) = 1;
      out.push_back(v);
    }
  return out;
}

}  // namespace trop::testing
