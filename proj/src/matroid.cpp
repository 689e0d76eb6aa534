#include "trop/matroid.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace trop {

namespace {

std::size_t size_of(ElementSet s) { return static_cast<std::size_t>(std::popcount(s)); }

ElementSet bit(std::size_t i) { return ElementSet(1) << i; }

std::vector<std::size_t> elements(ElementSet s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; s >> i; ++i)
    if (s & bit(i)) out.push_back(i);
  return out;
}

// Removes bit i and shifts the higher bits down.
ElementSet drop_bit(ElementSet s, std::size_t i) {
  ElementSet low = s & (bit(i) - 1);
  return low | ((s >> (i + 1)) << i);
}

}  // namespace

Matroid Matroid::from_bases(std::size_t n, std::vector<ElementSet> bases) {
  if (n > 16) throw InputError("matroids are limited to 16 elements");
  if (bases.empty()) throw InputError("a matroid needs at least one basis");
  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
  const ElementSet e = n == 0 ? 0 : (bit(n) - 1);
  const std::size_t r = size_of(bases.front());
  for (auto b : bases) {
    if (b & ~e) throw InputError("basis element outside the ground set");
    if (size_of(b) != r) throw InputError("bases must have equal size");
  }
  // Exchange: for x in B1 \ B2 some y in B2 \ B1 gives a basis B1 - x + y.
  for (auto b1 : bases)
    for (auto b2 : bases)
      for (auto x : elements(b1 & ~b2)) {
        bool found = false;
        for (auto y : elements(b2 & ~b1))
          if (std::binary_search(bases.begin(), bases.end(), (b1 & ~bit(x)) | bit(y))) {
            found = true;
            break;
          }
        if (!found) throw InputError("bases violate the exchange axiom");
      }
  Matroid m;
  m.n_ = n;
  m.rank_ = r;
  m.bases_ = std::move(bases);
  return m;
}

Matroid Matroid::free(std::size_t n) { return from_bases(n, {n == 0 ? 0 : bit(n) - 1}); }

Matroid Matroid::uniform(std::size_t r, std::size_t n) {
  if (r > n) throw InputError("uniform matroid rank exceeds ground set");
  std::vector<ElementSet> bases;
  for (ElementSet s = 0; s < bit(n); ++s)
    if (size_of(s) == r) bases.push_back(s);
  return from_bases(n, bases);
}

std::size_t Matroid::rank(ElementSet s) const {
  std::size_t best = 0;
  for (auto b : bases_) best = std::max(best, size_of(b & s));
  return best;
}

ElementSet Matroid::closure(ElementSet s) const {
  const std::size_t r = rank(s);
  ElementSet out = s;
  for (std::size_t i = 0; i < n_; ++i)
    if (!(s & bit(i)) && rank(s | bit(i)) == r) out |= bit(i);
  return out;
}

std::vector<ElementSet> Matroid::flats() const {
  std::vector<ElementSet> out;
  for (ElementSet s = 0; s <= ground(); ++s) {
    if (is_flat(s)) out.push_back(s);
    if (s == ground()) break;
  }
  std::stable_sort(out.begin(), out.end(), [&](ElementSet a, ElementSet b) { return rank(a) < rank(b); });
  return out;
}

std::vector<ElementSet> Matroid::atoms() const {
  std::vector<ElementSet> out;
  for (auto f : flats())
    if (rank(f) == 1) out.push_back(f);
  return out;
}

ElementSet Matroid::loops() const {
  ElementSet used = 0;
  for (auto b : bases_) used |= b;
  return ground() & ~used;
}

ElementSet Matroid::coloops() const {
  ElementSet all = ground();
  for (auto b : bases_) all &= b;
  return all;
}

bool Matroid::is_simple() const {
  if (!is_loopfree()) return false;
  for (std::size_t i = 0; i < n_; ++i)
    if (closure(bit(i)) != bit(i)) return false;
  return true;
}

Matroid deletion(const Matroid& m, std::size_t i) {
  if (i >= m.ground_size()) throw InputError("deleted element outside the ground set");
  const bool coloop = m.coloops() & bit(i);
  std::vector<ElementSet> bases;
  for (auto b : m.bases())
    if (coloop || !(b & bit(i))) bases.push_back(drop_bit(b & ~bit(i), i));
  return Matroid::from_bases(m.ground_size() - 1, bases);
}

Matroid delete_set(const Matroid& m, ElementSet r) {
  Matroid out = m;
  auto es = elements(r);
  for (auto it = es.rbegin(); it != es.rend(); ++it) out = deletion(out, *it);
  return out;
}

LatticeVector flat_vector(std::size_t n, ElementSet f) {
  LatticeVector v(n, 0);
  for (auto i : elements(f))
    if (i < n) v[i] = -1;
  return v;
}

TropicalCycle bergman_fan(const Matroid& m) {
  if (!m.is_loopfree()) throw InputError("Bergman fans need a loopfree matroid");
  const std::size_t n = m.ground_size(), r = m.rank();
  if (n == 0) throw InputError("empty ground set");
  const auto flats = m.flats();
  const LatticeVector ve = flat_vector(n, m.ground());
  std::vector<WeightedCone> cones;
  std::vector<ElementSet> chain;
  std::function<void(ElementSet)> extend = [&](ElementSet last) {
    if (chain.size() + 1 == r) {
      std::vector<LatticeVector> rays;
      for (auto f : chain) rays.push_back(flat_vector(n, f));
      cones.emplace_back(Cone::from_rays(n, rays, {ve}), 1);
      return;
    }
    const std::size_t want = m.rank(last) + 1;
    for (auto f : flats)
      if (m.rank(f) == want && (f & last) == last && f != last) {
        chain.push_back(f);
        extend(f);
        chain.pop_back();
      }
  };
  extend(m.closure(0));
  return TropicalCycle::from_compatible_cones(n, r, cones);
}

std::optional<std::pair<ElementSet, Integer>> as_flat_vector(const LatticeVector& x) {
  if (x.empty()) return std::nullopt;
  const Integer hi = *std::max_element(x.begin(), x.end());
  const Integer lo = *std::min_element(x.begin(), x.end());
  if (hi == lo) return std::pair<ElementSet, Integer>{0, hi};
  if (hi - lo != 1) return std::nullopt;
  ElementSet f = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] == lo) f |= bit(i);
  return std::pair<ElementSet, Integer>{f, hi};
}

namespace {

// The function on trop(M) that is linear on its cones with the given values
// at V_F for proper flats and at V_E.
RationalFanFunction from_flat_values(const Matroid& m, const Fan& fan,
                                     const std::function<Integer(ElementSet)>& value) {
  const Integer at_e = value(m.ground());
  // φ(1,...,1) = -φ(V_E).
  auto eval = [&](const LatticeVector& x) -> Integer {
    auto fv = as_flat_vector(x);
    if (!fv) throw InvariantError("ray of a Bergman fan is not a flat vector");
    Integer v = fv->first == 0 ? Integer(0) : value(fv->first);
    return v - fv->second * at_e;
  };
  std::vector<Integer> rays, lin;
  for (const auto& r : fan.rays()) rays.push_back(eval(r));
  for (const auto& l : fan.lineality()) lin.push_back(eval(l));
  return RationalFanFunction::from_ray_values(fan, rays, lin);
}

}  // namespace

std::vector<RationalFanFunction> rank_cut_functions(const Matroid& m, const Matroid& n) {
  if (m.ground_size() != n.ground_size()) throw InputError("matroids on different ground sets");
  if (n.rank() > m.rank()) throw InputError("rank of N exceeds rank of M");
  const Fan fan = bergman_fan(m).fan();
  std::vector<RationalFanFunction> out;
  for (std::size_t i = 1; i <= m.rank() - n.rank(); ++i)
    out.push_back(from_flat_values(m, fan, [&](ElementSet f) -> Integer {
      return m.rank(f) - n.rank(f) >= i ? -1 : 0;
    }));
  return out;
}

namespace {

// Whether every cone of c lies in the support of x.
bool supported_in(const TropicalCycle& c, const TropicalCycle& x) {
  if (c.is_zero()) return true;
  Fan g = common_refinement(c.fan(), x.fan());
  return equals_mod_refinement(refine_cycle(c, g), c);
}

PiecewisePolynomial cut_rec(const Matroid& m, const TropicalCycle& c, CutReport& rep) {
  ++rep.calls;
  const std::size_t n = m.ground_size();
  const TropicalCycle b = bergman_fan(m);
  const unsigned k = static_cast<unsigned>(b.dim() - c.dim());
  if (c.is_zero()) return PiecewisePolynomial::zero(orthant_fan(n), k);

  if (!m.is_simple()) {
    // Parallel elements: forgetting all but one coordinate of a parallel
    // class maps trop(M) isomorphically onto trop(M \ R).
    for (std::size_t a = 0; a < n; ++a) {
      ElementSet r = m.closure(bit(a)) & ~bit(a);
      if (!r) continue;
      MorphismZ pi = MorphismZ::forget(n, elements(r));
      return pp_pullback(pi, cut_rec(delete_set(m, r), push_forward(pi, c), rep));
    }
  }

  if (m.is_free()) {
    ++rep.base_cases;
    std::vector<Cone> cs;
    for (const auto& [cone, w] : c.weighted_cones()) cs.push_back(cone);
    Fan delta = unimodular_refinement(arrangement_refinement(orthant_fan(n), hyperplanes_of(cs)));
    return invert_duality(delta, c);
  }

  const ElementSet noncoloops = m.ground() & ~m.coloops();
  if (!noncoloops) throw InputError("unsupported matroid shape: no element can be deleted");
  TropicalCycle residual = c;
  std::optional<PiecewisePolynomial> f;
  for (auto i : elements(noncoloops)) {
    MorphismZ pi = MorphismZ::forget(n, i);
    PiecewisePolynomial fi = cut_rec(deletion(m, i), push_forward(pi, residual), rep);
    PiecewisePolynomial g = pp_pullback(pi, fi);
    residual = cycle_sub(residual, pp_intersect(g, b));
    f = f ? pp_add(*f, g) : g;
  }
  if (!residual.is_zero()) throw InvariantError("cutting recursion left a nonzero residual");
  rep.residual = residual;
  return *f;
}

}  // namespace

PiecewisePolynomial cut_subcycle(const Matroid& m, const TropicalCycle& c, CutReport* report) {
  if (!m.is_loopfree()) throw InputError("cutting needs a loopfree matroid");
  if (c.ambient_dim() != m.ground_size()) throw InputError("cycle and matroid in different ambient dimensions");
  const TropicalCycle b = bergman_fan(m);
  if (c.dim() >= b.dim()) throw InputError("cycle must have positive codimension in trop(M)");
  if (auto v = check_balancing(c)) throw InputError("cycle is not balanced at " + v->tau_cone.to_string());
  if (!supported_in(c, b)) throw InputError("cycle is not contained in trop(M)");
  CutReport rep;
  rep.residual = TropicalCycle::zero(c.ambient_dim(), c.dim());
  PiecewisePolynomial f = cut_rec(m, c, rep);
  rep.product = pp_intersect(f, b);
  if (!equals_mod_refinement(rep.product, c)) throw InvariantError("cut piecewise polynomial does not reproduce the cycle");
  if (report) *report = rep;
  return f;
}

Codim1Certificate verify_codim1_duality(const Matroid& m, const RationalFanFunction& phi) {
  const std::size_t n = m.ground_size();
  Codim1Certificate cert;
  cert.divisor = divisor(phi, bergman_fan(m));
  cert.divisor_zero = cert.divisor.is_zero();
  if (!cert.divisor_zero) return cert;
  const auto atoms = m.atoms();
  for (auto f : m.flats()) {
    Integer sum = 0;
    for (auto a : atoms)
      if ((a & f) == a) sum += phi.eval(flat_vector(n, a));
    if (phi.eval(flat_vector(n, f)) != sum) cert.failures.push_back(f);
  }
  if (!cert.failures.empty()) return cert;
  // l(e_a) = -φ(V_A) at the least element a of each atom A.
  LinearForm l(n, 0);
  for (auto a : atoms) l[elements(a).front()] = -phi.eval(flat_vector(n, a));
  for (auto f : m.flats())
    if (dot(l, flat_vector(n, f)) != phi.eval(flat_vector(n, f)))
      throw InvariantError("witness form disagrees with the function on a flat");
  cert.witness = l;
  return cert;
}

TropicalCycle psi_sigma_check(const TropicalCycle& x, const Cone& sigma) {
  const Fan& fan = x.fan();
  auto idx = fan.find(sigma);
  if (!idx || !x.weights().count(*idx)) throw InputError("sigma is not a maximal cone of the cycle");
  if (!fan.is_unimodular()) throw InputError("Ψ classes need a unimodular fan structure");
  TropicalCycle r = pp_intersect(psi_cone(fan, sigma), x);
  TropicalCycle expected = lineality_cycle(x.ambient_dim(), fan.lineality(), x.weights().at(*idx));
  if (!equals_mod_refinement(r, expected)) throw InvariantError("Ψ_σ·X differs from ω(σ) times the lineality space");
  return r;
}

LinearForm linear_relation(const TropicalCycle& x, const Cone& sigma1, const Cone& sigma2, const Cone& tau) {
  const Fan& fan = x.fan();
  const std::size_t n = x.ambient_dim();
  if (!fan.is_unimodular()) throw InputError("Ψ classes need a unimodular fan structure");
  auto i1 = fan.find(sigma1), i2 = fan.find(sigma2), it = fan.find(tau);
  if (!i1 || !i2 || !it || !x.weights().count(*i1) || !x.weights().count(*i2))
    throw InputError("sigma1 and sigma2 must be maximal cones of the cycle");
  if (*i1 == *i2) throw InputError("sigma1 and sigma2 coincide");
  if (!tau.is_face_of(sigma1) || !tau.is_face_of(sigma2) || tau.dim() + 1 != x.dim())
    throw InputError("tau must be a common facet of sigma1 and sigma2");
  const auto& tr = fan.ray_indices(*it);
  auto extra_ray = [&](std::size_t s) -> LatticeVector {
    for (auto r : fan.ray_indices(s))
      if (std::find(tr.begin(), tr.end(), r) == tr.end()) return fan.rays()[r];
    throw InvariantError("maximal cone has no ray outside its facet");
  };
  std::vector<LatticeVector> base;
  for (auto r : tr) base.push_back(fan.rays()[r]);
  for (const auto& l : fan.lineality()) base.push_back(l);
  std::vector<LatticeVector> others;
  std::size_t adjacent = 0;
  std::vector<LatticeVector> all = base;
  for (auto s : fan.cofacets_of(*it)) {
    if (!x.weights().count(s)) continue;
    ++adjacent;
    all.push_back(extra_ray(s));
    if (s != *i1 && s != *i2) others.push_back(extra_ray(s));
  }
  if (rank_of(n, all) != tau.dim() + adjacent - 1) throw InputError("cycle is not locally irreducible at tau");
  const LatticeVector w1 = extra_ray(*i1), w2 = extra_ray(*i2);
  const Integer om1 = x.weights().at(*i1), om2 = x.weights().at(*i2);
  std::vector<LatticeVector> rows = base;
  rows.insert(rows.end(), others.begin(), others.end());
  rows.push_back(w1);
  LatticeVector rhs(rows.size(), 0);
  rhs.back() = om2;
  auto l = solve_integer(IntegerMatrix(n, rows), rhs);
  if (!l) throw InvariantError("no integer linear form satisfies the relation");
  if (dot(*l, w2) != -om1) throw InvariantError("balancing does not give l(w2) = -ω(σ1)");
  return *l;
}

}  // namespace trop
