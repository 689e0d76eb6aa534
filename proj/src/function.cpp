#include "trop/function.hpp"

#include <algorithm>
#include <set>

namespace trop {

namespace {

LinearForm reduce_on(const Cone& c, const LinearForm& l) {
  if (c.equations().empty()) return l;
  return LatticeQuotient(c.ambient_dim(), c.equations()).reduce(l);
}

bool agree_on(const Cone& c, const LinearForm& a, const LinearForm& b) {
  LinearForm d = sub(a, b);
  for (const auto& v : c.lattice_basis())
    if (dot(d, v) != 0) return false;
  return true;
}

}  // namespace

RationalFanFunction::RationalFanFunction(Fan fan, const std::map<std::size_t, LinearForm>& forms)
    : fan_(std::move(fan)) {
  for (auto m : fan_.maximal()) {
    auto it = forms.find(m);
    if (it == forms.end()) throw InputError("missing linear form on a maximal cone");
    if (it->second.size() != fan_.ambient_dim()) throw InputError("linear form has wrong length");
    forms_.emplace(m, reduce_on(fan_.cone(m), it->second));
  }
  for (const auto& [i, l] : forms)
    if (!forms_.count(i)) throw InputError("linear form given on a non-maximal cone");
}

RationalFanFunction RationalFanFunction::from_ray_values(const Fan& fan, const std::vector<Integer>& ray_values,
                                                         const std::vector<Integer>& lineality_values) {
  if (!fan.is_simplicial()) throw InputError("ray values determine a function only on simplicial fans");
  if (ray_values.size() != fan.rays().size()) throw InputError("one value per ray is required");
  std::vector<Integer> lin_values = lineality_values;
  if (lin_values.empty()) lin_values.assign(fan.lineality().size(), 0);
  if (lin_values.size() != fan.lineality().size()) throw InputError("one value per lineality generator is required");
  const std::size_t n = fan.ambient_dim();
  std::map<std::size_t, LinearForm> forms;
  for (auto m : fan.maximal()) {
    std::vector<LatticeVector> rows;
    LatticeVector rhs;
    for (auto r : fan.ray_indices(m)) {
      rows.push_back(fan.rays()[r]);
      rhs.push_back(ray_values[r]);
    }
    for (std::size_t j = 0; j < fan.lineality().size(); ++j) {
      rows.push_back(fan.lineality()[j]);
      rhs.push_back(lin_values[j]);
    }
    if (rows.empty()) {
      forms.emplace(m, LinearForm(n, 0));
      continue;
    }
    auto sol = solve_integer(IntegerMatrix(n, rows), rhs);
    if (!sol) throw InputError("ray values do not define an integral function on a cone");
    forms.emplace(m, *sol);
  }
  return RationalFanFunction(fan, forms);
}

RationalFanFunction RationalFanFunction::linear(const Fan& fan, const LinearForm& l) {
  std::map<std::size_t, LinearForm> forms;
  for (auto m : fan.maximal()) forms.emplace(m, l);
  return RationalFanFunction(fan, forms);
}

const LinearForm& RationalFanFunction::form_on(std::size_t i) const {
  auto ms = fan_.maximal_containing(i);
  if (ms.empty()) throw InputError("cone lies in no maximal cone");
  return forms_.at(ms.front());
}

Rational RationalFanFunction::eval(const RationalVector& x) const {
  auto m = fan_.maximal_containing_point(x);
  if (!m) throw InputError("point outside the support of the function");
  return dot(forms_.at(*m), x);
}

Integer RationalFanFunction::eval(const LatticeVector& x) const {
  auto m = fan_.maximal_containing_point(to_rational(x));
  if (!m) throw InputError("point outside the support of the function");
  return dot(forms_.at(*m), x);
}

std::optional<std::pair<std::size_t, std::size_t>> RationalFanFunction::continuity_violation() const {
  for (std::size_t i = 0; i < fan_.size(); ++i) {
    auto ms = fan_.maximal_containing(i);
    for (std::size_t k = 1; k < ms.size(); ++k)
      if (!agree_on(fan_.cone(i), forms_.at(ms[0]), forms_.at(ms[k]))) return std::pair{ms[0], ms[k]};
  }
  return std::nullopt;
}

bool RationalFanFunction::is_globally_linear() const {
  if (fan_.empty()) return true;
  const std::size_t n = ambient_dim();
  std::vector<RationalVector> rows;
  RationalVector rhs;
  const LinearForm& any = forms_.begin()->second;
  for (const auto& l : fan_.lineality()) {
    rows.push_back(to_rational(l));
    rhs.push_back(Rational(dot(any, l)));
  }
  std::set<std::size_t> seen;
  for (auto m : fan_.maximal())
    for (auto r : fan_.ray_indices(m)) {
      if (!seen.insert(r).second) continue;
      rows.push_back(to_rational(fan_.rays()[r]));
      rhs.push_back(Rational(dot(forms_.at(m), fan_.rays()[r])));
    }
  if (rows.empty()) return true;
  if (!solve_rational(RationalMatrix(n, rows), rhs)) return false;
  // A global form through the ray values still has to match every cone.
  return !continuity_violation();
}

RationalFanFunction RationalFanFunction::refine_to(const Fan& g) const {
  std::map<std::size_t, LinearForm> forms;
  for (auto m : g.maximal()) {
    auto home = fan_.maximal_containing_point(g.cone(m).relative_interior_point());
    if (!home) throw InputError("refining fan leaves the support of the function");
    forms.emplace(m, forms_.at(*home));
  }
  return RationalFanFunction(g, forms);
}

RationalFanFunction function_add(const RationalFanFunction& a, const RationalFanFunction& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw InputError("functions in different ambient dimensions");
  if (a.fan() == b.fan()) {
    std::map<std::size_t, LinearForm> forms;
    for (const auto& [m, l] : a.forms()) forms.emplace(m, add(l, b.forms().at(m)));
    return RationalFanFunction(a.fan(), forms);
  }
  Fan g = common_refinement(a.fan(), b.fan());
  return function_add(a.refine_to(g), b.refine_to(g));
}

RationalFanFunction function_scale(const Integer& k, const RationalFanFunction& a) {
  std::map<std::size_t, LinearForm> forms;
  for (const auto& [m, l] : a.forms()) forms.emplace(m, scale(k, l));
  return RationalFanFunction(a.fan(), forms);
}

RationalFanFunction from_tropical_polynomial(std::size_t n, const std::vector<LinearForm>& input) {
  if (input.empty()) throw InputError("a tropical polynomial needs at least one term");
  std::vector<LinearForm> forms;
  for (const auto& l : input) {
    if (l.size() != n) throw InputError("linear form has wrong length");
    if (std::find(forms.begin(), forms.end(), l) == forms.end()) forms.push_back(l);
  }
  std::vector<Cone> regions;
  std::vector<LinearForm> region_form;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    std::vector<LinearForm> ineq;
    for (std::size_t j = 0; j < forms.size(); ++j)
      if (j != i) ineq.push_back(sub(forms[i], forms[j]));
    Cone c = Cone::from_inequalities(n, ineq);
    if (c.dim() != n) continue;
    regions.push_back(c);
    region_form.push_back(forms[i]);
  }
  Fan f = Fan::from_maximal_cones(n, regions);
  std::map<std::size_t, LinearForm> lf;
  for (std::size_t i = 0; i < regions.size(); ++i) lf.emplace(f.index_of(regions[i]), region_form[i]);
  return RationalFanFunction(f, lf);
}

RationalFanFunction psi_ray(const Fan& fan, std::size_t ray) {
  if (!fan.is_unimodular()) throw InputError("Ψ functions need a unimodular fan");
  if (ray >= fan.rays().size()) throw InputError("not a ray of the fan");
  std::vector<Integer> vals(fan.rays().size(), 0);
  vals[ray] = 1;
  return RationalFanFunction::from_ray_values(fan, vals);
}

RationalFanFunction psi_ray(const Fan& fan, const LatticeVector& ray) {
  Cone c = Cone::from_rays(fan.ambient_dim(), {ray}, fan.lineality());
  if (c.rays().size() != 1) throw InputError("not a ray of the fan");
  auto r = fan.find_ray(c.rays()[0]);
  if (!r) throw InputError("not a ray of the fan");
  return psi_ray(fan, *r);
}

RayValues express_in_psi(const RationalFanFunction& phi) {
  const Fan& f = phi.fan();
  if (!f.is_unimodular()) throw InputError("Ψ coordinates need a unimodular fan");
  RayValues out;
  out.rays.assign(f.rays().size(), 0);
  std::vector<bool> done(f.rays().size(), false);
  for (auto m : f.maximal())
    for (auto r : f.ray_indices(m)) {
      if (done[r]) continue;
      done[r] = true;
      out.rays[r] = dot(phi.forms().at(m), f.rays()[r]);
    }
  if (!f.empty() && !phi.forms().empty())
    for (const auto& l : f.lineality()) out.lineality.push_back(dot(phi.forms().begin()->second, l));
  return out;
}

TropicalCycle divisor(const RationalFanFunction& phi, const TropicalCycle& x, const NormalChooser& normals) {
  const std::size_t n = x.ambient_dim();
  if (phi.ambient_dim() != n) throw InputError("function and cycle in different ambient dimensions");
  if (x.dim() == 0) throw InputError("cannot intersect a zero-dimensional cycle with a function");
  if (x.is_zero()) return TropicalCycle::zero(n, x.dim() - 1);
  const std::size_t d = x.dim();
  std::map<Cone, std::pair<Integer, LinearForm>> cells;
  bool inside = true;
  for (const auto& [s, w] : x.weighted_cones())
    if (!phi.fan().find(s)) {
      inside = false;
      break;
    }
  if (inside) {
    for (const auto& [s, w] : x.weighted_cones()) cells.emplace(s, std::pair{w, phi.form_on(*phi.fan().find(s))});
  } else {
    for (const auto& [s, w] : x.weighted_cones()) {
      std::vector<Cone> own;
      for (const auto& [m, l] : phi.forms()) {
        Cone z = intersect(s, phi.fan().cone(m));
        if (z.dim() != d || cells.count(z)) continue;
        cells.emplace(z, std::pair{w, l});
        own.push_back(z);
      }
      // The cells must tile s: interior walls are shared by exactly two cells.
      std::map<Cone, int> walls;
      for (const auto& z : own)
        for (const auto& fc : z.facet_cones()) ++walls[fc];
      for (const auto& [fc, k] : walls)
        if (k == 1 && s.in_relative_interior(fc.relative_interior_point()))
          throw InputError("function is not defined on the whole cycle");
      if (own.empty()) throw InputError("function is not defined on the whole cycle");
    }
  }
  std::vector<Cone> cones;
  for (const auto& [c, wl] : cells) cones.push_back(c);
  Fan g = Fan::from_maximal_cones(n, cones);
  std::vector<WeightedCone> out;
  for (auto t : g.cones_of_dim(d - 1)) {
    const Cone& tau = g.cone(t);
    LatticeVector vsum(n, 0);
    Integer total = 0;
    const LinearForm* first = nullptr;
    for (auto s : g.cofacets_of(t)) {
      const auto& [w, l] = cells.at(g.cone(s));
      LatticeVector v = normals ? normals(g.cone(s), tau) : normal_vector(g.cone(s), tau);
      vsum = add(vsum, scale(w, v));
      total += w * dot(l, v);
      if (!first)
        first = &l;
      else if (!agree_on(tau, *first, l))
        throw InvariantError("function forms disagree on a shared face");
    }
    if (!first) continue;
    total -= dot(*first, vsum);
    if (total != 0) out.emplace_back(tau, total);
  }
  return TropicalCycle::from_compatible_cones(n, d - 1, out);
}

LinearForm pull_form(const IntegerMatrix& m, const LinearForm& l) {
  if (l.size() != m.rows()) throw InputError("form does not match the morphism target");
  LinearForm out(m.cols(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (l[i] != 0)
      for (std::size_t j = 0; j < m.cols(); ++j) out[j] += l[i] * m(i, j);
  return out;
}

Preimage preimage_fan(const IntegerMatrix& m, const Fan& target) {
  if (m.rows() != target.ambient_dim()) throw InputError("morphism target does not match the fan");
  const std::size_t n = m.cols();
  std::vector<std::pair<std::size_t, Cone>> pre;
  for (auto t : target.maximal()) {
    const Cone& c = target.cone(t);
    std::vector<LinearForm> ineq, eq;
    for (const auto& f : c.facets()) {
      LinearForm g = pull_form(m, f);
      if (!is_zero(g)) ineq.push_back(g);
    }
    for (const auto& e : c.equations()) {
      LinearForm g = pull_form(m, e);
      if (!is_zero(g)) eq.push_back(g);
    }
    pre.emplace_back(t, Cone::from_inequalities(n, ineq, eq));
  }
  std::vector<Cone> cones;
  for (const auto& [t, c] : pre) cones.push_back(c);
  Preimage out;
  out.fan = Fan::from_maximal_cones(n, cones);
  std::set<std::size_t> maximal(out.fan.maximal().begin(), out.fan.maximal().end());
  for (const auto& [t, c] : pre) {
    auto i = out.fan.find(c);
    if (i && maximal.count(*i)) out.target_of.emplace(*i, t);
  }
  return out;
}

RationalFanFunction pullback_function(const MorphismZ& pi, const RationalFanFunction& phi) {
  if (pi.translation) throw InputError("pull-back of fan functions needs a linear map");
  Preimage p = preimage_fan(pi.matrix, phi.fan());
  std::map<std::size_t, LinearForm> forms;
  for (const auto& [s, t] : p.target_of) forms.emplace(s, pull_form(pi.matrix, phi.forms().at(t)));
  return RationalFanFunction(p.fan, forms);
}

}  // namespace trop
