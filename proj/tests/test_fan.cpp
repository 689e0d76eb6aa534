#include "doctest.h"
#include "generators.hpp"

using namespace trop;
using namespace trop::testing;

namespace {

Fan tri_fan() {
  return Fan::from_maximal_cones(2, {Cone::from_rays(2, {lv({-1, 0}), lv({1, 1})}),
                                     Cone::from_rays(2, {lv({0, -1}), lv({1, 1})}),
                                     Cone::from_rays(2, {lv({-1, 0}), lv({0, -1})})});
}

Fan line_fan() {
  return Fan::from_maximal_cones(2, {Cone::from_rays(2, {lv({-1, 0})}), Cone::from_rays(2, {lv({0, -1})}),
                                     Cone::from_rays(2, {lv({1, 1})})});
}

}  // namespace

TEST_CASE("validation") {
  CHECK_FALSE(orthant_fan(2).validate().has_value());
  Fan overlap = Fan::from_maximal_cones(
      2, {Cone::from_rays(2, {lv({1, 0}), lv({0, 1})}), Cone::from_rays(2, {lv({1, 1}), lv({-1, 1})})});
  auto v = overlap.validate();
  REQUIRE(v.has_value());
  CHECK(v->kind == "intersection");
  Fan missing = Fan::from_cone_list(2, {Cone::from_rays(2, {lv({1, 0}), lv({0, 1})})});
  auto w = missing.validate();
  REQUIRE(w.has_value());
  CHECK(w->message == "face not in fan");
}

TEST_CASE("fan structure") {
  Fan f = tri_fan();
  CHECK(f.maximal().size() == 3);
  CHECK(f.rays().size() == 3);
  CHECK(f.size() == 7);
  CHECK(f.is_complete());
  CHECK(f.is_unimodular());
  CHECK(Fan::from_maximal_cones(2, {Cone::from_rays(2, {lv({1, 0}), lv({1, 2})})}).is_simplicial());
  CHECK_FALSE(Fan::from_maximal_cones(2, {Cone::from_rays(2, {lv({1, 0}), lv({1, 2})})}).is_unimodular());
  CHECK(Fan::from_maximal_cones(2, {Cone::from_rays(2, {})}).is_unimodular());
  CHECK_FALSE(line_fan().is_complete());
  for (std::size_t i = 0; i < f.size(); ++i)
    for (auto j : f.facets_of(i)) CHECK(f.cone(j).is_face_of(f.cone(i)));
}

TEST_CASE("stellar subdivision") {
  Fan quad = Fan::from_maximal_cones(2, {Cone::from_rays(2, {lv({1, 0}), lv({0, 1})})});
  Fan s = stellar_subdivide(quad, quad.cone(quad.maximal()[0]), lv({1, 1}));
  CHECK(s.maximal().size() == 2);
  CHECK(s.is_unimodular());
  CHECK_THROWS_AS(stellar_subdivide(quad, quad.cone(quad.maximal()[0]), lv({1, 0})), InputError);
  CHECK_THROWS_AS(stellar_subdivide(quad, quad.cone(quad.maximal()[0]), lv({-1, 1})), InputError);
  Fan idx2 = Fan::from_maximal_cones(2, {Cone::from_rays(2, {lv({1, 0}), lv({1, 2})})});
  Fan t = stellar_subdivide(idx2, idx2.cone(idx2.maximal()[0]), lv({1, 1}));
  REQUIRE(t.maximal().size() == 2);
  for (const auto& c : t.maximal_cones()) {
    IntegerMatrix m(2, c.rays());
    CHECK(abs(determinant(m)) == 1);
  }
  CHECK(same_support(idx2, t));
}

TEST_CASE("unimodular refinement") {
  Fan f = tri_fan();
  CHECK(unimodular_refinement(f) == f);
  Fan idx2 = Fan::from_maximal_cones(2, {Cone::from_rays(2, {lv({1, 0}), lv({1, 2})})});
  Fan r = unimodular_refinement(idx2);
  CHECK(r.is_unimodular());
  CHECK(r.find_ray(lv({1, 1})).has_value());
  Fan g = plane_fan_with_index_two_cone();
  Fan h = unimodular_refinement(g);
  CHECK(h.is_unimodular());
  CHECK(h.is_complete());
  CHECK(same_support(g, h));
}

TEST_CASE("unimodular refinement of random fans") {
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<int> d(-2, 2);
  for (int t = 0; t < 25; ++t) {
    // Complete fan from a random non-unimodular linear image of the orthants.
    IntegerMatrix m(3, 3);
    do {
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = d(rng);
    } while (determinant(m) == 0);
    Fan f = transform_fan(orthant_fan(3), m);
    Fan r = unimodular_refinement(f);
    CHECK(r.is_unimodular());
    CHECK(r.is_complete());
    CHECK(same_support(f, r));
    CHECK_FALSE(r.validate().has_value());
  }
  // Non-simplicial input is triangulated first.
  Fan sq = Fan::from_maximal_cones(
      3, {Cone::from_rays(3, {lv({1, 1, 1}), lv({1, -1, 1}), lv({-1, 1, 1}), lv({-1, -1, 1})})});
  Fan rs = unimodular_refinement(sq);
  CHECK(rs.is_unimodular());
  CHECK(same_support(sq, rs));
}

TEST_CASE("common refinement") {
  Fan f = tri_fan();
  CHECK(common_refinement(f, f) == f);
  Fan a = Fan::from_maximal_cones(1, {Cone::from_rays(1, {lv({1})}), Cone::from_rays(1, {lv({-1})})});
  CHECK(common_refinement(a, a) == a);
  Fan q = orthant_fan(2);
  // Pairwise intersection oracle: count full-dimensional intersections.
  std::size_t full = 0;
  for (const auto& x : f.maximal_cones())
    for (const auto& y : q.maximal_cones())
      if (intersect(x, y).dim() == 2) ++full;
  Fan cr = common_refinement(f, q);
  CHECK(cr.maximal().size() == full);
  CHECK(full == 5);
  CHECK_FALSE(cr.validate().has_value());
}

TEST_CASE("common refinement refines both inputs") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 15; ++t) {
    Fan a = random_complete_unimodular_fan(rng, 2, 2);
    Fan b = random_complete_unimodular_fan(rng, 2, 2);
    Fan c = common_refinement(a, b);
    CHECK_FALSE(c.validate().has_value());
    for (const auto& m : c.maximal_cones()) {
      int in_a = 0, in_b = 0;
      for (const auto& x : a.maximal_cones()) in_a += x.contains(m);
      for (const auto& y : b.maximal_cones()) in_b += y.contains(m);
      CHECK(in_a == 1);
      CHECK(in_b == 1);
    }
    CHECK(same_support(a, c));
  }
}

TEST_CASE("stars") {
  Fan f = tri_fan();
  CHECK(star_fan(f, f.cone(0)) == f);
  Fan l = line_fan();
  Fan s = star_fan(l, Cone::from_rays(2, {lv({1, 1})}));
  REQUIRE(s.maximal().size() == 1);
  CHECK(s.cone(s.maximal()[0]).lineality() == std::vector<LatticeVector>{lv({1, 1})});
  Fan t = star_fan(f, f.cone(f.maximal()[0]));
  CHECK(t.maximal().size() == 1);
  CHECK(t.cone(t.maximal()[0]).lineality_dim() == 2);
  CHECK_THROWS_AS(star_fan(f, Cone::from_rays(2, {lv({1, 0})})), InputError);
}

TEST_CASE("normal vectors") {
  Cone quad = Cone::from_rays(2, {lv({1, 0}), lv({0, 1})});
  Cone xray = Cone::from_rays(2, {lv({1, 0})});
  LatticeVector v = normal_vector(quad, xray);
  CHECK(v[1] == 1);
  CHECK(quad.contains(v));
  CHECK(normal_vector(Cone::from_rays(2, {lv({1, 2})}), Cone::from_rays(2, {})) == lv({1, 2}));
  Cone c = Cone::from_rays(2, {lv({1, 0}), lv({1, 2})});
  LatticeVector u = normal_vector(c, xray);
  // SNF quotient oracle: Λ_σ/Λ_τ = Z^2/Z(1,0) is read off the second coordinate.
  LatticeQuotient q(2, {lv({1, 0})});
  CHECK(q.quotient_coords(u) == lv({1}));
  CHECK(c.contains(u));
  CHECK_THROWS_AS(normal_vector(quad, Cone::from_rays(2, {})), InputError);
}

TEST_CASE("normal vector class is independent of representation") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 20; ++t) {
    Fan f = random_complete_unimodular_fan(rng, 3, 2);
    for (auto m : f.maximal())
      for (auto tau : f.facets_of(m)) {
        LatticeVector v = normal_vector(f.cone(m), f.cone(tau));
        CHECK(f.cone(m).contains(v));
        LatticeQuotient q(3, f.cone(tau).lattice_basis());
        LatticeVector qv = q.quotient_coords(v);
        CHECK(gcd_of(qv) == 1);
        // Any ray of sigma outside tau maps to a positive multiple.
        for (const auto& r : f.cone(m).rays()) {
          if (q.in_span(r)) continue;
          CHECK(primitive(q.quotient_coords(r)) == qv);
        }
      }
  }
}
