#include "trop/pwpoly.hpp"

#include <algorithm>
#include <set>

namespace trop {

namespace {

IntegerMatrix columns(std::size_t n, const std::vector<LatticeVector>& vs) {
  IntegerMatrix m(n, vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = vs[j][i];
  return m;
}

// Forms u with u(b_a) = δ_ab on the given part of a lattice basis.
std::vector<LinearForm> dual_forms(std::size_t n, const std::vector<LatticeVector>& basis) {
  std::vector<LinearForm> out;
  if (basis.empty()) return out;
  IntegerMatrix a(n, basis);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    LatticeVector e(basis.size(), 0);
    e[k] = 1;
    auto sol = solve_integer(a, e);
    if (!sol) throw InputError("cone is not unimodular");
    out.push_back(*sol);
  }
  return out;
}

// Ψ_r restricted to each maximal cone of a unimodular fan, keyed by global ray index.
class PsiTable {
 public:
  explicit PsiTable(const Fan& f) : f_(f) {
    if (!f.is_unimodular()) throw InputError("fan is not unimodular");
    for (auto m : f.maximal()) {
      std::vector<LatticeVector> basis;
      for (auto r : f.ray_indices(m)) basis.push_back(f.rays()[r]);
      for (const auto& l : f.lineality()) basis.push_back(l);
      auto us = dual_forms(f.ambient_dim(), basis);
      auto& row = forms_[m];
      const auto& idx = f.ray_indices(m);
      for (std::size_t k = 0; k < idx.size(); ++k) row.emplace(idx[k], us[k]);
    }
  }
  // Zero form when the ray is not in the cone.
  LinearForm form(std::size_t m, std::size_t ray) const {
    const auto& row = forms_.at(m);
    auto it = row.find(ray);
    return it == row.end() ? LinearForm(f_.ambient_dim(), 0) : it->second;
  }
  bool has(std::size_t m, std::size_t ray) const { return forms_.at(m).count(ray) > 0; }

 private:
  const Fan& f_;
  std::map<std::size_t, std::map<std::size_t, LinearForm>> forms_;
};

HomPolynomial psi_product_on(const PsiTable& t, const Fan& f, std::size_t m, const std::vector<std::size_t>& rays) {
  const std::size_t n = f.ambient_dim();
  for (auto r : rays)
    if (!t.has(m, r)) return HomPolynomial(n, static_cast<unsigned>(rays.size()));
  std::vector<LinearForm> forms;
  for (auto r : rays) forms.push_back(t.form(m, r));
  return product_of_forms(n, forms);
}

std::vector<std::size_t> rays_of(const Fan& f, const Cone& tau) {
  auto i = f.find(tau);
  if (!i) throw InputError("cone not in fan");
  return f.ray_indices(*i);
}

// Cells of x's weighted cones cut by the maximal cones of g, with the g cone
// each cell lies in. Throws when g does not cover the support.
struct Cells {
  std::vector<Cone> cones;
  std::vector<std::size_t> home;
};

Cells cells_over(const TropicalCycle& x, const Fan& g) {
  Cells out;
  bool inside = true;
  for (const auto& [s, w] : x.weighted_cones())
    if (!g.find(s)) {
      inside = false;
      break;
    }
  if (inside) {
    for (const auto& [s, w] : x.weighted_cones()) {
      out.cones.push_back(s);
      out.home.push_back(g.maximal_containing(*g.find(s)).front());
    }
    return out;
  }
  std::set<Cone> seen;
  for (const auto& [s, w] : x.weighted_cones()) {
    std::vector<Cone> own;
    for (auto m : g.maximal()) {
      Cone z = intersect(s, g.cone(m));
      if (z.dim() != x.dim() || !seen.insert(z).second) continue;
      out.cones.push_back(z);
      out.home.push_back(m);
      own.push_back(z);
    }
    std::map<Cone, int> walls;
    for (const auto& z : own)
      for (const auto& fc : z.facet_cones()) ++walls[fc];
    for (const auto& [fc, k] : walls)
      if (k == 1 && s.in_relative_interior(fc.relative_interior_point()))
        throw InputError("piecewise polynomial is not defined on the whole cycle");
    if (own.empty()) throw InputError("piecewise polynomial is not defined on the whole cycle");
  }
  return out;
}

}  // namespace

PiecewisePolynomial::PiecewisePolynomial(Fan fan, unsigned degree, std::map<std::size_t, HomPolynomial> pieces)
    : fan_(std::move(fan)), degree_(degree), pieces_(std::move(pieces)) {
  for (auto m : fan_.maximal())
    if (!pieces_.count(m)) throw InputError("missing piece on a maximal cone");
  for (const auto& [i, p] : pieces_)
    if (i >= fan_.size() || !std::binary_search(fan_.maximal().begin(), fan_.maximal().end(), i))
      throw InputError("piece given on a non-maximal cone");
}

PiecewisePolynomial PiecewisePolynomial::from_function(const RationalFanFunction& phi) {
  std::map<std::size_t, HomPolynomial> pieces;
  for (const auto& [m, l] : phi.forms()) pieces.emplace(m, HomPolynomial::linear(l));
  return PiecewisePolynomial(phi.fan(), 1, pieces);
}

PiecewisePolynomial PiecewisePolynomial::global(const Fan& fan, const HomPolynomial& p) {
  if (p.nvars() != fan.ambient_dim()) throw InputError("polynomial has wrong number of variables");
  std::map<std::size_t, HomPolynomial> pieces;
  for (auto m : fan.maximal()) pieces.emplace(m, p);
  return PiecewisePolynomial(fan, p.degree(), pieces);
}

PiecewisePolynomial PiecewisePolynomial::zero(const Fan& fan, unsigned degree) {
  return global(fan, HomPolynomial(fan.ambient_dim(), degree));
}

Rational PiecewisePolynomial::eval(const RationalVector& x) const {
  auto m = fan_.maximal_containing_point(x);
  if (!m) throw InputError("point outside the support of the piecewise polynomial");
  return pieces_.at(*m).eval(x);
}

PiecewisePolynomial PiecewisePolynomial::refine_to(const Fan& g) const {
  if (g == fan_) return *this;
  std::map<std::size_t, HomPolynomial> pieces;
  for (auto m : g.maximal()) {
    auto home = fan_.maximal_containing_point(g.cone(m).relative_interior_point());
    if (!home) throw InputError("refining fan leaves the support of the piecewise polynomial");
    pieces.emplace(m, pieces_.at(*home));
  }
  return PiecewisePolynomial(g, degree_, pieces);
}

HomPolynomial restrict_to(const HomPolynomial& p, const Cone& c) {
  return p.substitute(columns(c.ambient_dim(), c.lattice_basis()));
}

std::optional<PPViolation> validate_pp(const PiecewisePolynomial& f) {
  const Fan& fan = f.fan();
  for (const auto& [m, p] : f.pieces())
    if (p.degree() != f.degree() || p.nvars() != fan.ambient_dim())
      return PPViolation{"degree", m, std::nullopt, "piece has the wrong degree or variable count"};
  for (std::size_t i = 0; i < fan.size(); ++i) {
    auto ms = fan.maximal_containing(i);
    if (ms.size() < 2) continue;
    HomPolynomial ref = restrict_to(f.piece(ms[0]), fan.cone(i));
    for (std::size_t k = 1; k < ms.size(); ++k)
      if (!(restrict_to(f.piece(ms[k]), fan.cone(i)) == ref))
        return PPViolation{"continuity", ms[0], ms[k], "pieces disagree on a shared face"};
  }
  return std::nullopt;
}

PiecewisePolynomial pp_add(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
  if (a.degree() != b.degree()) throw InputError("degree mismatch");
  if (a.ambient_dim() != b.ambient_dim()) throw InputError("piecewise polynomials in different ambient dimensions");
  if (!(a.fan() == b.fan())) {
    Fan g = common_refinement(a.fan(), b.fan());
    return pp_add(a.refine_to(g), b.refine_to(g));
  }
  std::map<std::size_t, HomPolynomial> pieces;
  for (const auto& [m, p] : a.pieces()) pieces.emplace(m, p + b.piece(m));
  return PiecewisePolynomial(a.fan(), a.degree(), pieces);
}

PiecewisePolynomial pp_scale(const Integer& k, const PiecewisePolynomial& a) {
  std::map<std::size_t, HomPolynomial> pieces;
  for (const auto& [m, p] : a.pieces()) pieces.emplace(m, p.scaled(k));
  return PiecewisePolynomial(a.fan(), a.degree(), pieces);
}

PiecewisePolynomial pp_mul(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw InputError("piecewise polynomials in different ambient dimensions");
  if (!(a.fan() == b.fan())) {
    Fan g = common_refinement(a.fan(), b.fan());
    return pp_mul(a.refine_to(g), b.refine_to(g));
  }
  std::map<std::size_t, HomPolynomial> pieces;
  for (const auto& [m, p] : a.pieces()) pieces.emplace(m, p * b.piece(m));
  return PiecewisePolynomial(a.fan(), a.degree() + b.degree(), pieces);
}

bool pp_equal(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
  if (a.degree() != b.degree() || a.ambient_dim() != b.ambient_dim()) return false;
  Fan g = a.fan() == b.fan() ? a.fan() : common_refinement(a.fan(), b.fan());
  PiecewisePolynomial x = a.refine_to(g), y = b.refine_to(g);
  for (auto m : g.maximal())
    if (!(restrict_to(x.piece(m), g.cone(m)) == restrict_to(y.piece(m), g.cone(m)))) return false;
  return true;
}

PiecewisePolynomial psi_monomial(const Fan& fan, const std::vector<std::size_t>& rays) {
  if (rays.empty()) throw InputError("Ψ products need at least one ray");
  PsiTable t(fan);
  std::map<std::size_t, HomPolynomial> pieces;
  for (auto m : fan.maximal()) pieces.emplace(m, psi_product_on(t, fan, m, rays));
  return PiecewisePolynomial(fan, static_cast<unsigned>(rays.size()), pieces);
}

PiecewisePolynomial psi_cone(const Fan& fan, const Cone& tau) { return psi_monomial(fan, rays_of(fan, tau)); }

PsiRepresentation decompose(const PiecewisePolynomial& f) {
  const Fan& fan = f.fan();
  const std::size_t n = fan.ambient_dim();
  const unsigned k = f.degree();
  PsiTable table(fan);
  std::map<std::size_t, HomPolynomial> residual = f.pieces();
  PsiRepresentation rep;
  // Cones are ordered by dimension, hence by ray count (common lineality).
  for (std::size_t t = 0; t < fan.size(); ++t) {
    const auto& rays = fan.ray_indices(t);
    if (rays.size() > k) break;
    auto ms = fan.maximal_containing(t);
    if (ms.empty()) continue;
    std::vector<LatticeVector> basis;
    for (auto r : rays) basis.push_back(fan.rays()[r]);
    for (const auto& l : fan.lineality()) basis.push_back(l);
    HomPolynomial g = residual.at(ms[0]).substitute(columns(n, basis));
    if (g.is_zero()) continue;
    Exponent e(basis.size(), 0);
    for (std::size_t a = 0; a < rays.size(); ++a) e[a] = 1;
    HomPolynomial a;
    try {
      a = g.divide_exact(HomPolynomial::monomial(e, 1));
    } catch (const InputError&) {
      throw InvariantError("exactness sequence violated");
    }
    HomPolynomial coeff = a.substitute(IntegerMatrix(n, dual_forms(n, basis)));
    for (auto m : ms) residual.at(m) = residual.at(m) - coeff * psi_product_on(table, fan, m, rays);
    rep.push_back({fan.cone(t), coeff});
  }
  for (const auto& [m, p] : residual)
    if (!restrict_to(p, fan.cone(m)).is_zero()) throw InvariantError("exactness sequence violated");
  return rep;
}

PiecewisePolynomial evaluate_representation(const Fan& fan, unsigned degree, const PsiRepresentation& rep) {
  PsiTable table(fan);
  std::map<std::size_t, HomPolynomial> pieces;
  for (auto m : fan.maximal()) pieces.emplace(m, HomPolynomial(fan.ambient_dim(), degree));
  for (const auto& term : rep) {
    auto rays = rays_of(fan, term.tau);
    for (auto m : fan.maximal()) pieces.at(m) = pieces.at(m) + term.coeff * psi_product_on(table, fan, m, rays);
  }
  return PiecewisePolynomial(fan, degree, pieces);
}

ProductForm to_products(const Fan& fan, unsigned degree, const PsiRepresentation& rep) {
  const std::size_t n = fan.ambient_dim();
  std::map<std::size_t, RationalFanFunction> psis, coords;
  auto psi = [&](std::size_t r) -> const RationalFanFunction& {
    auto it = psis.find(r);
    if (it == psis.end()) it = psis.emplace(r, psi_ray(fan, r)).first;
    return it->second;
  };
  auto coord = [&](std::size_t i) -> const RationalFanFunction& {
    auto it = coords.find(i);
    if (it == coords.end()) {
      LinearForm e(n, 0);
      e[i] = 1;
      it = coords.emplace(i, RationalFanFunction::linear(fan, e)).first;
    }
    return it->second;
  };
  ProductForm out;
  for (const auto& term : rep) {
    auto rays = rays_of(fan, term.tau);
    if (term.coeff.degree() + rays.size() != degree) throw InvariantError("representation term has the wrong degree");
    for (const auto& [e, c] : term.coeff.terms()) {
      ProductTerm p{c, {}};
      for (std::size_t i = 0; i < n; ++i)
        for (unsigned j = 0; j < e[i]; ++j) p.factors.push_back(coord(i));
      for (auto r : rays) p.factors.push_back(psi(r));
      out.push_back(std::move(p));
    }
  }
  return out;
}

TropicalCycle pp_intersect(const PiecewisePolynomial& f, const TropicalCycle& x, IntersectionTrace* trace) {
  const std::size_t n = x.ambient_dim();
  if (f.ambient_dim() != n) throw InputError("piecewise polynomial and cycle in different ambient dimensions");
  if (f.degree() == 0) throw InputError("degree zero piecewise polynomials are not intersected; scale the cycle");
  if (f.degree() > x.dim()) throw InputError("degree exceeds the dimension of the cycle");
  const std::size_t out_dim = x.dim() - f.degree();
  if (x.is_zero()) return TropicalCycle::zero(n, out_dim);
  Cells cells = cells_over(x, f.fan());
  Fan g = Fan::from_maximal_cones(n, cells.cones);
  if (!g.is_unimodular()) g = unimodular_refinement(g);
  std::map<std::size_t, HomPolynomial> pieces;
  for (auto m : g.maximal()) {
    RationalVector p = g.cone(m).relative_interior_point();
    std::optional<std::size_t> home;
    for (std::size_t c = 0; c < cells.cones.size() && !home; ++c)
      if (cells.cones[c].contains(p)) home = cells.home[c];
    if (!home) throw InvariantError("refinement left the support of the cycle");
    pieces.emplace(m, f.piece(*home));
  }
  PiecewisePolynomial fg(g, f.degree(), pieces);
  TropicalCycle xg = refine_cycle(x, g);
  PsiRepresentation rep = decompose(fg);
  ProductForm prods = to_products(g, f.degree(), rep);
  std::vector<WeightedCone> acc;
  for (const auto& term : prods) {
    TropicalCycle y = xg;
    for (const auto& phi : term.factors) {
      y = divisor(phi, y);
      if (y.is_zero()) break;
    }
    for (const auto& [c, w] : y.weighted_cones()) acc.emplace_back(c, term.coeff * w);
  }
  if (trace) *trace = IntersectionTrace{g, rep, prods};
  return TropicalCycle::from_compatible_cones(n, out_dim, acc);
}

TropicalCycle germ_intersect(const PiecewisePolynomial& germ, const TropicalCycle& star) {
  return pp_intersect(germ, star);
}

TropicalCycle katz_payne(const PiecewisePolynomial& f) {
  const Fan& d = f.fan();
  const std::size_t n = d.ambient_dim();
  if (!d.is_complete()) throw InputError("the weight formula needs a complete fan");
  if (!d.is_unimodular()) throw InputError("the weight formula needs a unimodular fan");
  if (!d.is_pointed()) throw InputError("the weight formula needs a pointed fan");
  if (f.degree() > n) throw InputError("degree exceeds the ambient dimension");
  const std::size_t tdim = n - f.degree();
  PsiTable table(d);
  static const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  constexpr std::size_t np = sizeof(primes) / sizeof(primes[0]);
  // Σ_σ f_σ / Π_{v ∈ σ \ τ} u_v evaluated at x; nullopt on a vanishing denominator.
  auto evaluate = [&](std::size_t t, const std::vector<std::size_t>& around,
                      const RationalVector& x) -> std::optional<Rational> {
    Rational sum = 0;
    const auto& tr = d.ray_indices(t);
    for (auto m : around) {
      Rational den = 1;
      for (auto r : d.ray_indices(m)) {
        if (std::binary_search(tr.begin(), tr.end(), r)) continue;
        den *= dot(table.form(m, r), x);
      }
      if (den == 0) return std::nullopt;
      sum += f.piece(m).eval(x) / den;
    }
    return sum;
  };
  std::vector<WeightedCone> out;
  for (auto t : d.cones_of_dim(tdim)) {
    auto around = d.maximal_containing(t);
    std::vector<Rational> values;
    for (std::size_t shift = 0; values.size() < 2; ++shift) {
      if (shift > 4 * np) throw InvariantError("no evaluation point avoids the denominators");
      RationalVector x(n);
      for (std::size_t i = 0; i < n; ++i) {
        Integer p = primes[(shift + 3 * i) % np];
        x[i] = Rational(p * (i % 2 ? -1 : 1) * Integer(shift / np + 1) + Integer(shift));
      }
      if (auto v = evaluate(t, around, x)) values.push_back(*v);
    }
    if (values[0] != values[1]) throw InvariantError("weight formula is not constant");
    if (values[0].get_den() != 1) throw InvariantError("weight formula is not an integer");
    if (values[0] != 0) out.emplace_back(d.cone(t), values[0].get_num());
  }
  return TropicalCycle::from_compatible_cones(n, tdim, out);
}

TropicalCycle katz_payne(const PiecewisePolynomial& f, const Fan& delta) { return katz_payne(f.refine_to(delta)); }

bool is_lpp_on_complete_fan(const PiecewisePolynomial& f) { return katz_payne(f).is_zero(); }

PiecewisePolynomial invert_duality(const Fan& delta, const TropicalCycle& c) {
  const std::size_t n = delta.ambient_dim();
  if (c.ambient_dim() != n) throw InputError("cycle and fan in different ambient dimensions");
  if (!delta.is_complete() || !delta.is_unimodular() || !delta.is_pointed())
    throw InputError("duality inverse needs a complete unimodular pointed fan");
  if (c.dim() >= n) throw InputError("cycle must have positive codimension");
  const unsigned k = static_cast<unsigned>(n - c.dim());
  if (c.is_zero()) return PiecewisePolynomial::zero(delta, k);
  std::vector<std::size_t> taus = delta.cones_of_dim(c.dim());
  LatticeVector target;
  for (auto t : taus) {
    RationalVector p = delta.cone(t).relative_interior_point();
    Integer w = 0;
    for (const auto& [s, ws] : c.weighted_cones())
      if (s.contains(p)) {
        w = ws;
        break;
      }
    target.push_back(w);
  }
  // Generators: Ψ monomials of degree k over rays sharing a cone.
  std::set<std::vector<std::size_t>> gens;
  for (auto m : delta.maximal()) {
    const auto& rs = delta.ray_indices(m);
    std::vector<std::size_t> pick(k, 0);
    while (true) {
      std::vector<std::size_t> g;
      for (auto p : pick) g.push_back(rs[p]);
      gens.insert(g);
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == rs.size() - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[i - 1];
    }
  }
  std::vector<std::vector<std::size_t>> glist(gens.begin(), gens.end());
  std::vector<PiecewisePolynomial> polys;
  IntegerMatrix a(taus.size(), glist.size());
  for (std::size_t j = 0; j < glist.size(); ++j) {
    polys.push_back(psi_monomial(delta, glist[j]));
    TropicalCycle kp = katz_payne(polys.back());
    for (std::size_t i = 0; i < taus.size(); ++i) a(i, j) = kp.weight(delta.cone(taus[i]));
  }
  auto lambda = solve_integer(a, target);
  if (!lambda) throw InvariantError("no integer preimage under the weight formula");
  PiecewisePolynomial f = PiecewisePolynomial::zero(delta, k);
  for (std::size_t j = 0; j < glist.size(); ++j)
    if ((*lambda)[j] != 0) f = pp_add(f, pp_scale((*lambda)[j], polys[j]));
  if (!equals_mod_refinement(katz_payne(f), c)) throw InputError("cycle is not a union of cones of the fan");
  return f;
}

PiecewisePolynomial pp_pullback(const MorphismZ& pi, const PiecewisePolynomial& f) {
  if (pi.translation) throw InputError("pull-back of fan data needs a linear map");
  Preimage p = preimage_fan(pi.matrix, f.fan());
  std::map<std::size_t, HomPolynomial> pieces;
  for (const auto& [s, t] : p.target_of) pieces.emplace(s, f.piece(t).substitute(pi.matrix));
  return PiecewisePolynomial(p.fan, f.degree(), pieces);
}

}  // namespace trop
