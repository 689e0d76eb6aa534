#include "trop/cycle.hpp"

#include <algorithm>

namespace trop {

namespace {

void add_weight(std::map<Cone, Integer>& acc, const Cone& c, const Integer& w) {
  if (w == 0) return;
  auto [it, fresh] = acc.emplace(c, w);
  if (!fresh) it->second += w;
}

TropicalCycle from_accumulated(std::size_t n, std::size_t d, const std::map<Cone, Integer>& acc) {
  std::vector<Cone> cones;
  for (const auto& [c, w] : acc)
    if (w != 0) cones.push_back(c);
  if (cones.empty()) return TropicalCycle::zero(n, d);
  Fan f = Fan::from_maximal_cones(n, cones);
  std::map<std::size_t, Integer> ws;
  for (const auto& [c, w] : acc)
    if (w != 0) ws.emplace(f.index_of(c), w);
  return TropicalCycle::from_fan(d, f, ws);
}

// Forms vanishing on span(vs).
std::vector<LinearForm> annihilator(std::size_t n, const std::vector<LatticeVector>& vs) {
  if (vs.empty()) {
    std::vector<LinearForm> out;
    for (std::size_t i = 0; i < n; ++i) {
      LinearForm e(n, 0);
      e[i] = 1;
      out.push_back(e);
    }
    return out;
  }
  return integer_kernel(IntegerMatrix(n, vs));
}

}  // namespace

TropicalCycle TropicalCycle::zero(std::size_t n, std::size_t d) {
  TropicalCycle c;
  c.n_ = n;
  c.d_ = d;
  c.fan_ = Fan(n);
  return c;
}

TropicalCycle TropicalCycle::from_fan(std::size_t d, const Fan& f, const std::map<std::size_t, Integer>& weights) {
  std::vector<Cone> kept;
  for (const auto& [i, w] : weights) {
    if (i >= f.size()) throw InputError("weight refers to a missing cone");
    if (f.cone(i).dim() != d) throw InputError("weighted cone has the wrong dimension");
    if (w != 0) kept.push_back(f.cone(i));
  }
  TropicalCycle c = zero(f.ambient_dim(), d);
  if (kept.empty()) return c;
  c.fan_ = kept.size() == f.maximal().size() ? f : Fan::from_maximal_cones(f.ambient_dim(), kept);
  for (const auto& [i, w] : weights)
    if (w != 0) c.weights_.emplace(c.fan_.index_of(f.cone(i)), w);
  if (c.weights_.size() != c.fan_.maximal().size()) throw InputError("weighted cones are not maximal in their fan");
  return c;
}

TropicalCycle TropicalCycle::uniform(const Fan& f, const Integer& w) {
  if (f.empty()) return zero(f.ambient_dim(), 0);
  if (!f.is_pure()) throw InputError("fan is not pure");
  std::map<std::size_t, Integer> ws;
  for (auto m : f.maximal()) ws.emplace(m, w);
  return from_fan(f.dim(), f, ws);
}

TropicalCycle TropicalCycle::from_compatible_cones(std::size_t n, std::size_t d,
                                                   const std::vector<WeightedCone>& cones) {
  std::map<Cone, Integer> acc;
  for (const auto& [c, w] : cones) {
    if (c.dim() != d) throw InputError("weighted cone has the wrong dimension");
    add_weight(acc, c, w);
  }
  return from_accumulated(n, d, acc);
}

TropicalCycle TropicalCycle::from_weighted_cones(std::size_t n, std::size_t d,
                                                 const std::vector<WeightedCone>& cones) {
  std::map<Cone, Integer> grouped;
  for (const auto& [c, w] : cones) {
    if (c.ambient_dim() != n) throw InputError("cone has wrong ambient dimension");
    if (c.dim() != d) throw InputError("weighted cone has the wrong dimension");
    add_weight(grouped, c, w);
  }
  std::vector<Cone> live;
  for (const auto& [c, w] : grouped)
    if (w != 0) live.push_back(c);
  if (live.empty()) return zero(n, d);
  // Cells of the arrangement of all facet and equation hyperplanes, plus forms
  // cutting every lineality down to the common one, pairwise meet in faces.
  std::vector<LinearForm> extra;
  for (const auto& c : live) {
    if (c.lineality() == live.front().lineality()) continue;
    for (const auto& cc : {c, live.front()})
      for (const auto& a : annihilator(n, cc.lineality())) extra.push_back(a);
  }
  std::vector<LinearForm> hs = hyperplanes_of(live);
  for (const auto& e : extra) hs.push_back(normalize_hyperplane(e));
  std::sort(hs.begin(), hs.end(), vec_less);
  hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
  std::map<Cone, Integer> acc;
  for (const auto& [c, w] : grouped) {
    if (w == 0) continue;
    for (const auto& cell : split_by_hyperplanes(c, hs))
      if (cell.dim() == d) add_weight(acc, cell, w);
  }
  return from_accumulated(n, d, acc);
}

Integer TropicalCycle::weight(const Cone& c) const {
  auto i = fan_.find(c);
  if (!i) return 0;
  auto it = weights_.find(*i);
  return it == weights_.end() ? Integer(0) : it->second;
}

std::vector<WeightedCone> TropicalCycle::weighted_cones() const {
  std::vector<WeightedCone> out;
  for (const auto& [i, w] : weights_) out.emplace_back(fan_.cone(i), w);
  return out;
}

std::optional<BalancingViolation> check_balancing(const TropicalCycle& c) {
  if (c.is_zero() || c.dim() == 0) return std::nullopt;
  const Fan& f = c.fan();
  for (auto t : f.cones_of_dim(c.dim() - 1)) {
    const Cone& tau = f.cone(t);
    LatticeVector sum(c.ambient_dim(), 0);
    for (auto s : f.cofacets_of(t)) {
      auto it = c.weights().find(s);
      if (it == c.weights().end()) continue;
      sum = add(sum, scale(it->second, normal_vector(f.cone(s), tau)));
    }
    if (is_zero(sum)) continue;
    LatticeQuotient q(c.ambient_dim(), tau.lattice_basis());
    if (!q.in_span(sum)) return BalancingViolation{t, tau, sum};
  }
  return std::nullopt;
}

TropicalCycle cycle_scale(const Integer& k, const TropicalCycle& a) {
  if (k == 0 || a.is_zero()) return TropicalCycle::zero(a.ambient_dim(), a.dim());
  std::map<std::size_t, Integer> ws;
  for (const auto& [i, w] : a.weights()) ws.emplace(i, k * w);
  return TropicalCycle::from_fan(a.dim(), a.fan(), ws);
}

TropicalCycle cycle_add(const TropicalCycle& a, const TropicalCycle& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw InputError("cycles in different ambient dimensions");
  if (a.dim() != b.dim()) throw InputError("cycles of different dimensions");
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  std::vector<WeightedCone> all = a.weighted_cones();
  std::vector<WeightedCone> more = b.weighted_cones();
  all.insert(all.end(), more.begin(), more.end());
  auto inside = [](const TropicalCycle& x, const TropicalCycle& y) {
    for (const auto& [c, w] : x.weighted_cones())
      if (!y.fan().find(c)) return false;
    return true;
  };
  if (inside(a, b) || inside(b, a)) return TropicalCycle::from_compatible_cones(a.ambient_dim(), a.dim(), all);
  return TropicalCycle::from_weighted_cones(a.ambient_dim(), a.dim(), all);
}

TropicalCycle cycle_sub(const TropicalCycle& a, const TropicalCycle& b) { return cycle_add(a, cycle_scale(-1, b)); }

bool equals_mod_refinement(const TropicalCycle& a, const TropicalCycle& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw InputError("cycles in different ambient dimensions");
  if (a.dim() != b.dim()) return a.is_zero() && b.is_zero();
  if (a == b) return true;
  return cycle_sub(a, b).is_zero();
}

Integer degree0(const TropicalCycle& c) {
  if (c.dim() != 0) throw InputError("degree is defined for zero-dimensional cycles only");
  Integer total = 0;
  for (const auto& [i, w] : c.weights()) total += w;
  return total;
}

MorphismZ MorphismZ::forget(std::size_t n, std::size_t i) { return forget(n, std::vector<std::size_t>{i}); }

MorphismZ MorphismZ::forget(std::size_t n, const std::vector<std::size_t>& drop) {
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < n; ++j)
    if (std::find(drop.begin(), drop.end(), j) == drop.end()) keep.push_back(j);
  MorphismZ m;
  m.matrix = IntegerMatrix(keep.size(), n);
  for (std::size_t r = 0; r < keep.size(); ++r) m.matrix(r, keep[r]) = 1;
  return m;
}

TropicalCycle push_forward(const MorphismZ& pi, const TropicalCycle& c) {
  if (pi.translation) throw InputError("push-forward of fan cycles needs a linear map");
  if (pi.source_dim() != c.ambient_dim()) throw InputError("morphism source does not match the cycle");
  const std::size_t m = pi.target_dim();
  std::vector<WeightedCone> images;
  for (const auto& [s, w] : c.weighted_cones()) {
    std::vector<LatticeVector> rs, ls;
    for (const auto& r : s.rays()) rs.push_back(mat_apply(pi.matrix, r));
    for (const auto& l : s.lineality()) ls.push_back(mat_apply(pi.matrix, l));
    std::vector<LatticeVector> nz;
    for (auto& r : rs)
      if (!is_zero(r)) nz.push_back(r);
    Cone img = Cone::from_rays(m, nz, ls);
    if (img.dim() != c.dim()) continue;
    std::vector<LatticeVector> gens;
    for (const auto& b : s.lattice_basis()) gens.push_back(mat_apply(pi.matrix, b));
    images.emplace_back(img, w * saturation_index(m, gens));
  }
  return TropicalCycle::from_weighted_cones(m, c.dim(), images);
}

TropicalCycle star_cycle(const TropicalCycle& c, const Cone& tau) {
  auto t = c.fan().find(tau);
  if (!t) throw InputError("cone not in fan");
  const std::size_t n = c.ambient_dim();
  std::vector<LatticeVector> lin = tau.lineality();
  lin.insert(lin.end(), tau.rays().begin(), tau.rays().end());
  std::vector<WeightedCone> out;
  for (auto m : c.fan().maximal_containing(*t))
    out.emplace_back(Cone::from_rays(n, c.fan().cone(m).rays(), lin), c.weights().at(m));
  return TropicalCycle::from_compatible_cones(n, c.dim(), out);
}

TropicalCycle refine_cycle(const TropicalCycle& c, const Fan& g) {
  std::vector<WeightedCone> out;
  for (auto i : g.cones_of_dim(c.dim())) {
    RationalVector p = g.cone(i).relative_interior_point();
    for (const auto& [s, w] : c.weighted_cones())
      if (s.contains(p)) {
        out.emplace_back(g.cone(i), w);
        break;
      }
  }
  return TropicalCycle::from_compatible_cones(c.ambient_dim(), c.dim(), out);
}

TropicalCycle lineality_cycle(std::size_t n, const std::vector<LatticeVector>& lineality, const Integer& w) {
  Cone l = Cone::from_rays(n, {}, lineality);
  return TropicalCycle::from_compatible_cones(n, l.dim(), {{l, w}});
}

}  // namespace trop
