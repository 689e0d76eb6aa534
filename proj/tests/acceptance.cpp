// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "trop/json_io.hpp"

using namespace trop;
using namespace trop::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << "failed: " << what << "; ";
    ok = ok && cond;
  }
};

ElementSet set_of(std::initializer_list<int> xs) {
  ElementSet s = 0;
  for (int x : xs) s |= ElementSet(1) << (x - 1);
  return s;
}

bool bit(ElementSet s, std::size_t i) { return (s >> i) & 1u; }

std::vector<Matroid> corpus(std::size_t max_n) {
  std::vector<Matroid> out;
  for (const auto& j : load_json(std::string(TROP_TEST_DATA) + "/matroids.json"))
    if (j.at("n").get<std::size_t>() <= max_n) out.push_back(matroid_from_json(j));
  return out;
}

TropicalCycle iterated_divisor(const std::vector<RationalFanFunction>& phis, TropicalCycle x) {
  for (const auto& phi : phis) x = divisor(phi, x);
  return x;
}

PiecewisePolynomial product_of(const Fan& f, const std::vector<RationalFanFunction>& phis) {
  PiecewisePolynomial p = PiecewisePolynomial::global(f, HomPolynomial::constant(f.ambient_dim(), 1));
  for (const auto& phi : phis) p = pp_mul(p, PiecewisePolynomial::from_function(phi));
  return p;
}

bool same_on_samples(const PiecewisePolynomial& a, const PiecewisePolynomial& b, std::mt19937_64& rng, int samples) {
  for (int k = 0; k < samples; ++k) {
    RationalVector p = to_rational(support_point(a.fan(), rng));
    if (a.eval(p) != b.eval(p)) return false;
  }
  return true;
}

Integer psi_tau_value(const Fan& f, const Cone& tau, const LatticeVector& p) {
  if (tau.rays().empty()) return 1;
  return psi_cone(f, tau).eval(to_rational(p)).get_num();
}

void c1(Outcome& o) {
  TropicalCycle kp = katz_payne(tri_square());
  o.require(kp == origin_cycle(2, 1), "weight formula gives 1 at the origin");
  PiecewisePolynomial a = PiecewisePolynomial::from_function(max_xy0());
  PiecewisePolynomial b = PiecewisePolynomial::from_function(max_xy());
  TropicalCycle r2 = TropicalCycle::uniform(tri_fan());
  TropicalCycle aa = pp_intersect(pp_mul(a, a), r2), ba = pp_intersect(pp_mul(b, a), r2);
  o.require(equals_mod_refinement(aa, ba), "both factorizations give the same cycle");
  o.require(equals_mod_refinement(aa, kp), "products agree with the weight formula");
  o.require(equals_mod_refinement(iterated_divisor({max_xy0(), max_xy0()}, r2), aa), "iterated divisor of a·a");
  o.require(equals_mod_refinement(iterated_divisor({max_xy0(), max_xy()}, r2), ba), "iterated divisor of b·a");
  o.detail << "weight at origin " << degree0(kp).get_str();
}

void c2(Outcome& o) {
  std::mt19937_64 rng(2);
  PiecewisePolynomial f = l32_f();
  PsiRepresentation rep = decompose(f);
  PiecewisePolynomial back = evaluate_representation(f.fan(), 2, rep);
  o.require(pp_equal(back, f), "decomposition evaluates to f");
  o.require(same_on_samples(back, f, rng, 200), "decomposition agrees with f on samples");
  PiecewisePolynomial expected = l32_expected_representation();
  o.require(same_on_samples(expected, f, rng, 200), "-2xΨa + xΨb - Ψs1 + Ψs2 + Ψs3 - 2Ψs4 agrees with f");
  // The variant with +2xΨa differs from f by 4xΨa, which is nonzero at a.
  PiecewisePolynomial plus = pp_add(expected, pp_mul(PiecewisePolynomial::global(f.fan(), HomPolynomial::variable(3, 0).scaled(4)),
                                                     psi_cone(f.fan(), Cone::from_rays(3, {l32_a()}))));
  bool plus_matches = pp_equal(plus, f);
  TropicalCycle x = pp_intersect(f, l32_cycle());
  o.require(x == origin_cycle(3, -1), "intersection with the plane is -1 at the origin");
  o.detail << rep.size() << " terms; f·L = " << degree0(x).get_str()
           << "; the +2xΨa sign variant " << (plus_matches ? "also matches" : "does not match f");
}

void c3(Outcome& o) {
  std::mt19937_64 rng(3);
  int cases = 0;
  for (int t = 0; t < 240; ++t) {
    std::size_t n = 2 + t % 2;
    Fan f = random_complete_unimodular_fan(rng, n, 1 + t % 3);
    std::size_t k = 1 + static_cast<std::size_t>(rng() % std::min<std::size_t>(3, n));
    std::vector<RationalFanFunction> phis;
    for (std::size_t i = 0; i < k; ++i) phis.push_back(random_ray_function(f, rng));
    TropicalCycle kp = katz_payne(product_of(f, phis));
    TropicalCycle it = iterated_divisor(phis, TropicalCycle::uniform(f));
    o.require(equals_mod_refinement(kp, it), "case " + std::to_string(t));
    ++cases;
  }
  o.require(cases >= 200, "at least 200 cases");
  o.detail << cases << " products";
}

void c4(Outcome& o) {
  std::mt19937_64 rng(4);
  int cases = 0, distinct = 0;
  for (int t = 0; t < 110; ++t) {
    std::size_t n = 2 + t % 2;
    Fan f = random_complete_unimodular_fan(rng, n, 1);
    unsigned k = 1 + static_cast<unsigned>(rng() % n);
    PiecewisePolynomial p = random_pp(f, k, rng);
    // Two refinements: star subdivisions at two different maximal cones.
    const auto& maxi = f.maximal();
    const std::size_t i1 = rng() % maxi.size(), i2 = (i1 + 1 + rng() % (maxi.size() - 1)) % maxi.size();
    const Cone &m1 = f.cone(maxi[i1]), &m2 = f.cone(maxi[i2]);
    Fan g1 = unimodular_refinement(stellar_subdivide(f, m1, m1.interior_point()));
    Fan g2 = unimodular_refinement(stellar_subdivide(f, m2, m2.interior_point()));
    PiecewisePolynomial p1 = p.refine_to(g1), p2 = p.refine_to(g2);
    o.require(pp_equal(evaluate_representation(g1, k, decompose(p1)), p1), "representation on the first refinement");
    o.require(pp_equal(evaluate_representation(g2, k, decompose(p2)), p2), "representation on the second refinement");
    IntersectionTrace t1, t2;
    TropicalCycle x1 = pp_intersect(p1, TropicalCycle::uniform(g1), &t1);
    TropicalCycle x2 = pp_intersect(p2, TropicalCycle::uniform(g2), &t2);
    o.require(equals_mod_refinement(x1, x2), "case " + std::to_string(t));
    if (!(t1.fan == t2.fan)) ++distinct;
    ++cases;
  }
  o.require(cases >= 100, "at least 100 cases");
  o.require(distinct == cases, "the two refinements differ");
  o.detail << cases << " piecewise polynomials, " << distinct << " with distinct refinements";
}

TropicalCycle random_ray_cycle(const Fan& f, std::mt19937_64& rng) {
  const std::size_t m = f.rays().size();
  IntegerMatrix a(2, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < 2; ++i) a(i, j) = f.rays()[j][i];
  std::uniform_int_distribution<int> c(-3, 3);
  for (;;) {
    LatticeVector w(m, 0);
    for (const auto& k : integer_kernel(a)) w = add(w, scale(c(rng), k));
    std::vector<WeightedCone> cones;
    for (std::size_t j = 0; j < m; ++j)
      if (w[j] != 0) cones.push_back({Cone::from_rays(2, {f.rays()[j]}), w[j]});
    if (!cones.empty()) return TropicalCycle::from_compatible_cones(2, 1, cones);
  }
}

void c5(Outcome& o) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> c(-4, 4);
  int trips = 0, lpp = 0;
  for (int t = 0; t < 60; ++t) {
    Fan f = random_complete_unimodular_fan(rng, 2, 1 + t % 4);
    TropicalCycle x;
    if (t % 2 == 0) {
      int w = 0;
      while (w == 0) w = c(rng);
      x = origin_cycle(2, w);
    } else {
      x = random_ray_cycle(f, rng);
    }
    o.require(!check_balancing(x).has_value(), "weights are balanced");
    PiecewisePolynomial g = invert_duality(f, x);
    o.require(equals_mod_refinement(katz_payne(g), x), "round trip " + std::to_string(t));
    ++trips;
  }
  for (int t = 0; t < 60; ++t) {
    std::size_t n = 2 + t % 2;
    Fan f = random_complete_unimodular_fan(rng, n, 1 + t % 3);
    LinearForm l(n, 0);
    while (std::all_of(l.begin(), l.end(), [](const Integer& v) { return v == 0; }))
      for (auto& v : l) v = c(rng);
    unsigned k = 1 + static_cast<unsigned>(rng() % (n - 1));
    PiecewisePolynomial p = pp_mul(PiecewisePolynomial::global(f, HomPolynomial::linear(l)), random_pp(f, k, rng));
    o.require(katz_payne(p).is_zero(), "linear multiple " + std::to_string(t));
    ++lpp;
  }
  o.require(trips >= 50 && lpp >= 50, "at least 50 cases of each kind");
  o.detail << trips << " round trips, " << lpp << " linear multiples";
}

void c6(Outcome& o) {
  int ms = 0, dels = 0;
  for (const auto& m : corpus(5)) {
    TropicalCycle b = bergman_fan(m);
    o.require(!check_balancing(b).has_value(), "balanced");
    o.require(b.dim() == m.rank(), "dimension equals rank");
    for (const auto& [i, w] : b.weights()) o.require(w == 1, "weights are one");
    for (std::size_t i = 0; i < m.ground_size(); ++i) {
      if (bit(m.coloops(), i)) continue;
      o.require(equals_mod_refinement(push_forward(MorphismZ::forget(m.ground_size(), i), b), bergman_fan(deletion(m, i))),
                "push-forward along a deletion");
      ++dels;
    }
    ++ms;
  }
  o.require(ms == 1 + 2 + 4 + 9 + 21, "corpus holds every loopfree matroid up to isomorphism");
  o.detail << ms << " matroids, " << dels << " deletions";
}

void c7(Outcome& o) {
  const std::vector<std::pair<Matroid, Matroid>> pairs{{Matroid::free(3), Matroid::uniform(2, 3)},
                                                       {Matroid::free(4), Matroid::uniform(2, 4)},
                                                       {Matroid::free(4), Matroid::uniform(3, 4)}};
  for (const auto& [m, n] : pairs) {
    auto phis = rank_cut_functions(m, n);
    o.require(phis.size() == m.rank() - n.rank(), "one function per rank step");
    o.require(equals_mod_refinement(iterated_divisor(phis, bergman_fan(m)), bergman_fan(n)), "cut reproduces trop(N)");
  }
  o.detail << pairs.size() << " nested pairs";
}

void c8(Outcome& o) {
  struct Case {
    Matroid m;
    TropicalCycle c;
  };
  std::vector<Case> cases;
  Matroid u23 = Matroid::uniform(2, 3);
  cases.push_back({u23, TropicalCycle::zero(3, 1)});
  cases.push_back({u23, lineality_cycle(3, {LatticeVector(3, 1)}, 1)});
  for (int w = -2; w <= 2; ++w) cases.push_back({u23, origin_cycle(3, w)});
  for (int w = -2; w <= 2; ++w) cases.push_back({Matroid::free(2), origin_cycle(2, w)});
  for (const auto& [m, c] : cases) {
    CutReport rep;
    PiecewisePolynomial f = cut_subcycle(m, c, &rep);
    o.require(equals_mod_refinement(pp_intersect(f, bergman_fan(m)), c), "f·trop(M) reproduces C");
    o.require(rep.residual.is_zero(), "residual is zero");
  }
  o.detail << cases.size() << " runs";
}

void c9(Outcome& o) {
  int sigmas = 0, pairs = 0;
  for (const auto& s : l32_sigmas()) o.require(psi_sigma_check(l32_cycle(), s) == origin_cycle(3, 1), "plane Ψσ");
  const Fan plane = l32_fan();
  for (auto m : plane.maximal()) {
    o.require(psi_sigma_check(l32_cycle(), plane.cone(m)) == origin_cycle(3, 1), "plane Ψσ");
    ++sigmas;
  }
  TropicalCycle u = bergman_fan(Matroid::uniform(2, 3));
  for (const auto& [cone, w] : u.weighted_cones()) {
    // The lineality line is the origin modulo lineality.
    o.require(equals_mod_refinement(psi_sigma_check(u, cone), lineality_cycle(3, {LatticeVector(3, 1)}, w)), "U23 Ψσ");
    ++sigmas;
  }
  std::mt19937_64 rng(9);
  for (const auto& x : {l32_cycle(), u}) {
    const Fan& f = x.fan();
    for (auto t : f.cones_of_dim(x.dim() - 1)) {
      const auto& adj = f.cofacets_of(t);
      for (auto s1 : adj)
        for (auto s2 : adj) {
          if (s1 == s2) continue;
          const Cone &a = f.cone(s1), &b = f.cone(s2), &tau = f.cone(t);
          LinearForm l = linear_relation(x, a, b, tau);
          PiecewisePolynomial pa = psi_cone(f, a), pb = psi_cone(f, b);
          for (int k = 0; k < 25; ++k) {
            LatticeVector p = support_point(f, rng);
            Rational lhs = pa.eval(to_rational(p)) - pb.eval(to_rational(p));
            o.require(lhs == Rational(dot(l, p) * psi_tau_value(f, tau, p)), "linear relation holds pointwise");
          }
          ++pairs;
        }
    }
  }
  o.detail << sigmas << " maximal cones, " << pairs << " adjacent pairs at 25 points each";
}

void c10(Outcome& o) {
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> c(-5, 5);
  int total = 0;
  for (const auto& m : {Matroid::uniform(2, 3), Matroid::uniform(2, 4)}) {
    TropicalCycle b = bergman_fan(m);
    const Fan& f = b.fan();
    auto basis = zero_divisor_basis(m);
    for (int t = 0; t < 25; ++t) {
      RayValues v{std::vector<Integer>(f.rays().size(), 0), std::vector<Integer>(f.lineality().size(), 0)};
      for (const auto& k : basis) {
        Integer s = c(rng);
        for (std::size_t i = 0; i < v.rays.size(); ++i) v.rays[i] += s * k.rays[i];
        for (std::size_t i = 0; i < v.lineality.size(); ++i) v.lineality[i] += s * k.lineality[i];
      }
      RationalFanFunction phi = RationalFanFunction::from_ray_values(f, v.rays, v.lineality);
      o.require(divisor(phi, b).is_zero(), "divisor is zero");
      for (ElementSet fl : m.flats()) {
        Rational sum = 0;
        for (std::size_t a = 0; a < m.ground_size(); ++a)
          if (bit(fl, a)) sum += phi.eval(flat_vector(m.ground_size(), ElementSet(1) << a));
        o.require(phi.eval(flat_vector(m.ground_size(), fl)) == sum, "flat identity");
      }
      o.require(verify_codim1_duality(m, phi).failures.empty(), "library certificate agrees");
      ++total;
    }
  }
  o.require(total >= 50, "at least 50 functions");
  o.detail << total << " functions";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double limit_s;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> all{{1, 1, c1},   {2, 1, c2},   {3, 120, c3}, {4, 120, c4}, {5, 120, c5},
                                   {6, 300, c6}, {7, 600, c7}, {8, 600, c8}, {9, 600, c9}, {10, 600, c10}};
  int failed = 0;
  for (const auto& c : all) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << "exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_s) {
      o.ok = false;
      o.detail << "; exceeded " << c.limit_s << " s";
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << "criterion " << c.id << ": " << (o.ok ? "PASS" : "FAIL") << " (" << timing << ") " << o.detail.str()
              << std::endl;
    failed += o.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
