#include "trop/fan.hpp"

#include <algorithm>
#include <set>

namespace trop {

namespace {

struct VecListLess {
  bool operator()(const std::vector<LatticeVector>& a, const std::vector<LatticeVector>& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), vec_less);
  }
};

struct VecLess {
  bool operator()(const LatticeVector& a, const LatticeVector& b) const { return vec_less(a, b); }
};

bool is_subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace

Fan Fan::from_maximal_cones(std::size_t n, const std::vector<Cone>& input) {
  Fan f(n);
  if (input.empty()) return f;
  const auto& lin = input.front().lineality();
  std::map<std::vector<LatticeVector>, Cone, VecListLess> all;
  for (const auto& c : input) {
    if (c.ambient_dim() != n) throw InputError("cone has wrong ambient dimension");
    if (c.lineality() != lin) throw InputError("cones have different lineality spaces");
    if (all.count(c.rays())) continue;
    for (const auto& s : c.face_ray_sets()) {
      std::vector<LatticeVector> key;
      for (auto i : s) key.push_back(c.rays()[i]);
      if (all.count(key)) continue;
      if (s.size() == c.rays().size())
        all.emplace(key, c);
      else
        all.emplace(key, Cone::from_rays(n, key, lin));
    }
  }
  for (auto& [k, c] : all) f.cones_.push_back(std::move(c));
  std::sort(f.cones_.begin(), f.cones_.end());
  f.index();
  return f;
}

Fan Fan::from_cone_list(std::size_t n, const std::vector<Cone>& input) {
  Fan f(n);
  std::set<Cone> uniq(input.begin(), input.end());
  for (const auto& c : uniq) {
    if (c.ambient_dim() != n) throw InputError("cone has wrong ambient dimension");
    f.cones_.push_back(c);
  }
  f.index();
  return f;
}

Fan Fan::from_indexed(std::size_t n, const std::vector<LatticeVector>& rays,
                      const std::vector<LatticeVector>& lineality,
                      const std::vector<std::vector<std::size_t>>& cones, bool close) {
  std::vector<Cone> cs;
  for (const auto& idx : cones) {
    std::vector<LatticeVector> rs;
    for (auto i : idx) {
      if (i >= rays.size()) throw InputError("cone refers to a missing ray");
      rs.push_back(rays[i]);
    }
    cs.push_back(Cone::from_rays(n, rs, lineality));
  }
  if (cs.empty() && !lineality.empty()) cs.push_back(Cone::from_rays(n, {}, lineality));
  return close ? from_maximal_cones(n, cs) : from_cone_list(n, cs);
}

void Fan::index() {
  lookup_.clear();
  rays_.clear();
  ray_idx_.assign(cones_.size(), {});
  facets_.assign(cones_.size(), {});
  cofacets_.assign(cones_.size(), {});
  maximal_.clear();
  lineality_consistent_ = true;
  if (cones_.empty()) {
    lineality_.clear();
    return;
  }
  lineality_ = cones_.front().lineality();
  std::set<LatticeVector, VecLess> rayset;
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    lookup_.emplace(cones_[i], i);
    if (cones_[i].lineality() != lineality_) lineality_consistent_ = false;
    for (const auto& r : cones_[i].rays()) rayset.insert(r);
  }
  rays_.assign(rayset.begin(), rayset.end());
  std::map<LatticeVector, std::size_t, VecLess> rindex;
  for (std::size_t i = 0; i < rays_.size(); ++i) rindex.emplace(rays_[i], i);
  std::map<std::vector<std::size_t>, std::size_t> by_rays;
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    for (const auto& r : cones_[i].rays()) ray_idx_[i].push_back(rindex.at(r));
    std::sort(ray_idx_[i].begin(), ray_idx_[i].end());
    if (cones_[i].lineality() == lineality_) by_rays.emplace(ray_idx_[i], i);
  }
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    const Cone& c = cones_[i];
    if (c.lineality() != lineality_) continue;
    for (const auto& f : c.facets()) {
      std::vector<std::size_t> s;
      for (auto k : c.rays_on(f)) s.push_back(rindex.at(c.rays()[k]));
      std::sort(s.begin(), s.end());
      auto it = by_rays.find(s);
      if (it == by_rays.end()) continue;
      if (cones_[it->second].dim() + 1 != c.dim()) continue;
      facets_[i].push_back(it->second);
      cofacets_[it->second].push_back(i);
    }
  }
  for (auto& v : facets_) std::sort(v.begin(), v.end());
  for (auto& v : cofacets_) std::sort(v.begin(), v.end());
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    bool maximal = cofacets_[i].empty();
    if (maximal) {
      // Explicit lists may skip intermediate faces.
      for (std::size_t j = 0; j < cones_.size() && maximal; ++j)
        if (cones_[j].dim() > cones_[i].dim() && cones_[j].lineality() == cones_[i].lineality() &&
            is_subset(ray_idx_[i], ray_idx_[j]))
          maximal = false;
    }
    if (maximal) maximal_.push_back(i);
  }
}

std::vector<Cone> Fan::maximal_cones() const {
  std::vector<Cone> out;
  for (auto i : maximal_) out.push_back(cones_[i]);
  return out;
}

std::optional<std::size_t> Fan::find(const Cone& c) const {
  auto it = lookup_.find(c);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t Fan::index_of(const Cone& c) const {
  auto i = find(c);
  if (!i) throw InputError("cone not in fan: " + c.to_string());
  return *i;
}

std::optional<std::size_t> Fan::find_ray(const LatticeVector& r) const {
  auto it = std::lower_bound(rays_.begin(), rays_.end(), r, vec_less);
  if (it == rays_.end() || *it != r) return std::nullopt;
  return static_cast<std::size_t>(it - rays_.begin());
}

std::vector<std::size_t> Fan::cones_of_dim(std::size_t d) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cones_.size(); ++i)
    if (cones_[i].dim() == d) out.push_back(i);
  return out;
}

std::vector<std::size_t> Fan::maximal_containing(std::size_t i) const {
  std::vector<std::size_t> out;
  for (auto m : maximal_)
    if (is_subset(ray_idx_[i], ray_idx_[m]) && cones_[m].dim() >= cones_[i].dim()) out.push_back(m);
  return out;
}

std::optional<std::size_t> Fan::maximal_containing_point(const RationalVector& x) const {
  for (auto m : maximal_)
    if (cones_[m].contains(x)) return m;
  return std::nullopt;
}

std::optional<std::size_t> Fan::locate(const RationalVector& x) const {
  for (std::size_t i = 0; i < cones_.size(); ++i)
    if (cones_[i].in_relative_interior(x)) return i;
  return std::nullopt;
}

std::size_t Fan::dim() const {
  std::size_t d = 0;
  for (const auto& c : cones_) d = std::max(d, c.dim());
  return d;
}

bool Fan::is_pure() const {
  for (auto m : maximal_)
    if (cones_[m].dim() != dim()) return false;
  return true;
}

bool Fan::is_complete() const {
  if (cones_.empty()) return n_ == 0;
  if (!is_pure() || dim() != n_) return false;
  if (n_ == 0) return true;
  for (std::size_t i = 0; i < cones_.size(); ++i)
    if (cones_[i].dim() + 1 == n_ && cofacets_[i].size() != 2) return false;
  return true;
}

bool Fan::is_simplicial() const {
  for (auto m : maximal_)
    if (!cones_[m].is_simplicial()) return false;
  return true;
}

bool Fan::is_unimodular() const {
  for (auto m : maximal_)
    if (!cones_[m].is_unimodular()) return false;
  return true;
}

std::optional<FanViolation> Fan::validate() const {
  for (std::size_t i = 0; i < cones_.size(); ++i)
    if (cones_[i].lineality() != lineality_)
      return FanViolation{"lineality", 0, i, "cones have different lineality spaces"};
  std::map<std::vector<std::size_t>, std::size_t> by_rays;
  for (std::size_t i = 0; i < cones_.size(); ++i) by_rays.emplace(ray_idx_[i], i);
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    const Cone& c = cones_[i];
    for (const auto& s : c.face_ray_sets()) {
      std::vector<std::size_t> g;
      for (auto k : s) g.push_back(*find_ray(c.rays()[k]));
      std::sort(g.begin(), g.end());
      if (!by_rays.count(g)) return FanViolation{"face", i, std::nullopt, "face not in fan"};
    }
  }
  for (std::size_t a = 0; a < maximal_.size(); ++a)
    for (std::size_t b = a + 1; b < maximal_.size(); ++b) {
      const Cone& x = cones_[maximal_[a]];
      const Cone& y = cones_[maximal_[b]];
      Cone z = intersect(x, y);
      if (!z.is_face_of(x) || !z.is_face_of(y))
        return FanViolation{"intersection", maximal_[a], maximal_[b], "intersection is not a common face"};
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

LatticeVector normal_vector(const Cone& sigma, const Cone& tau) {
  if (tau.dim() + 1 != sigma.dim()) throw InputError("normal vector needs a codimension one face");
  const std::size_t n = sigma.ambient_dim();
  LatticeQuotient q(n, tau.lattice_basis());
  const LatticeVector* out = nullptr;
  for (const auto& r : sigma.rays())
    if (!q.in_span(r)) {
      out = &r;
      break;
    }
  if (!out) throw InputError("normal vector needs a codimension one face");
  LatticeVector v = q.lift(primitive(q.quotient_coords(*out)));
  const LatticeVector p = tau.interior_point();
  for (int k = 0; k < 1000000; ++k) {
    if (sigma.contains(v)) return v;
    if (is_zero(p)) break;
    v = add(v, p);
  }
  throw InvariantError("normal vector search left the cone");
}

Fan stellar_subdivide(const Fan& f, const Cone& c, const LatticeVector& r) {
  if (!f.find(c)) throw InputError("cone not in fan");
  if (!c.in_relative_interior(r)) throw InputError("subdivision point not in the relative interior of the cone");
  const std::size_t n = f.ambient_dim();
  LatticeQuotient lq(n, f.lineality());
  if (lq.in_span(r)) throw InputError("subdivision point lies in the lineality space");
  LatticeVector rr = lq.canonical(r);
  if (f.find_ray(rr)) throw InputError("subdivision point is an existing ray");
  std::vector<Cone> out;
  for (const auto& m : f.maximal_cones()) {
    if (!m.contains(c)) {
      out.push_back(m);
      continue;
    }
    for (const auto& phi : m.facet_cones()) {
      if (phi.contains(c)) continue;
      std::vector<LatticeVector> rs = phi.rays();
      rs.push_back(rr);
      out.push_back(Cone::from_rays(n, rs, f.lineality()));
    }
  }
  return Fan::from_maximal_cones(n, out);
}

Fan triangulate(const Fan& f) {
  if (f.is_simplicial()) return f;
  const std::size_t n = f.ambient_dim();
  std::vector<Cone> cur = f.maximal_cones();
  for (const auto& r : f.rays()) {
    std::vector<Cone> nxt;
    for (const auto& m : cur) {
      if (m.is_simplicial() || !m.contains(r)) {
        nxt.push_back(m);
        continue;
      }
      for (const auto& phi : m.facet_cones()) {
        if (phi.contains(r)) continue;
        std::vector<LatticeVector> rs = phi.rays();
        rs.push_back(r);
        nxt.push_back(Cone::from_rays(n, rs, f.lineality()));
      }
    }
    cur = std::move(nxt);
  }
  return Fan::from_maximal_cones(n, cur);
}

namespace {

// Minimal nonzero point of the fundamental parallelepiped of a simplicial
// cone, with the face whose relative interior contains it.
std::pair<Cone, LatticeVector> parallelepiped_point(const Cone& s) {
  const std::size_t n = s.ambient_dim();
  const std::size_t m = s.rays().size();
  std::vector<LatticeVector> b = s.rays();
  b.insert(b.end(), s.lineality().begin(), s.lineality().end());
  const std::size_t d = b.size();
  std::vector<LatticeVector> w = s.lattice_basis();
  IntegerMatrix wt = IntegerMatrix(n, w).transpose();
  IntegerMatrix mm(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    auto sol = solve_integer(wt, b[i]);
    if (!sol) throw InvariantError("generator outside its lattice");
    for (std::size_t j = 0; j < d; ++j) mm(i, j) = (*sol)[j];
  }
  SmithForm snf = smith_normal_form(mm);
  IntegerMatrix vinv = unimodular_inverse(snf.v);
  RationalMatrix minv = inverse(to_rational(mm));
  std::vector<Integer> box(d);
  for (std::size_t i = 0; i < d; ++i) box[i] = snf.d(i, i);

  bool have = false;
  Rational best_score;
  std::vector<Rational> best_frac;
  std::vector<Integer> a(d, 0);
  for (;;) {
    std::vector<Integer> y(d, 0);
    for (std::size_t i = 0; i < d; ++i)
      if (a[i] != 0)
        for (std::size_t j = 0; j < d; ++j) y[j] += a[i] * vinv(i, j);
    std::vector<Rational> frac(d);
    Rational score = 0;
    bool nonzero = false;
    for (std::size_t j = 0; j < d; ++j) {
      Rational lam = 0;
      for (std::size_t i = 0; i < d; ++i) lam += y[i] * minv(i, j);
      frac[j] = lam - floor_of(lam);
      if (j < m) {
        score += frac[j];
        if (frac[j] != 0) nonzero = true;
      }
    }
    if (nonzero && (!have || score < best_score)) {
      have = true;
      best_score = score;
      best_frac = frac;
    }
    std::size_t i = 0;
    while (i < d && a[i] + 1 >= box[i]) a[i++] = 0;
    if (i == d) break;
    ++a[i];
  }
  if (!have) throw InvariantError("no interior lattice point in a cone of multiplicity > 1");
  RationalVector x(n, 0);
  std::vector<LatticeVector> face;
  for (std::size_t j = 0; j < d; ++j) {
    if (best_frac[j] == 0) continue;
    if (j < m) face.push_back(s.rays()[j]);
    for (std::size_t k = 0; k < n; ++k) x[k] += best_frac[j] * b[j][k];
  }
  LatticeVector xi(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (x[k].get_den() != 1) throw InvariantError("parallelepiped point is not integral");
    xi[k] = x[k].get_num();
  }
  return {Cone::from_rays(n, face, s.lineality()), xi};
}

}  // namespace

Fan unimodular_refinement(const Fan& f) {
  Fan g = triangulate(f);
  const std::size_t n = g.ambient_dim();
  // Work on the list of maximal simplicial cones; a face c lies in sigma iff
  // its rays are among sigma's rays.
  std::vector<Cone> cur = g.maximal_cones();
  std::vector<Integer> mult;
  for (const auto& c : cur) mult.push_back(c.multiplicity());
  auto ray_set = [](const Cone& c) {
    std::set<LatticeVector, VecLess> s(c.rays().begin(), c.rays().end());
    return s;
  };
  for (int step = 0; step < 100000; ++step) {
    std::size_t bad = cur.size();
    for (std::size_t i = 0; i < cur.size(); ++i)
      if (mult[i] > 1) {
        bad = i;
        break;
      }
    if (bad == cur.size()) return Fan::from_maximal_cones(n, cur);
    auto [face, point] = parallelepiped_point(cur[bad]);
    LatticeQuotient lq(n, g.lineality());
    LatticeVector r = lq.canonical(point);
    std::vector<Cone> nxt;
    std::vector<Integer> nmult;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      auto rs = ray_set(cur[i]);
      bool has_face = std::all_of(face.rays().begin(), face.rays().end(),
                                  [&](const LatticeVector& x) { return rs.count(x) > 0; });
      if (!has_face) {
        nxt.push_back(cur[i]);
        nmult.push_back(mult[i]);
        continue;
      }
      for (const auto& drop : face.rays()) {
        std::vector<LatticeVector> gens;
        for (const auto& x : cur[i].rays())
          if (x != drop) gens.push_back(x);
        gens.push_back(r);
        nxt.push_back(Cone::from_rays(n, gens, g.lineality()));
        nmult.push_back(nxt.back().multiplicity());
      }
    }
    cur = std::move(nxt);
    mult = std::move(nmult);
  }
  throw InvariantError("unimodular refinement did not terminate");
}

Fan common_refinement(const Fan& a, const Fan& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw InputError("fans in different ambient dimensions");
  std::vector<Cone> cells;
  for (const auto& x : a.maximal_cones())
    for (const auto& y : b.maximal_cones()) cells.push_back(intersect(x, y));
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return Fan::from_maximal_cones(a.ambient_dim(), cells);
}

Fan star_fan(const Fan& f, const Cone& tau) {
  auto idx = f.find(tau);
  if (!idx) throw InputError("cone not in fan");
  const std::size_t n = f.ambient_dim();
  std::vector<LatticeVector> lin = tau.lineality();
  lin.insert(lin.end(), tau.rays().begin(), tau.rays().end());
  std::vector<Cone> out;
  for (auto m : f.maximal_containing(*idx)) out.push_back(Cone::from_rays(n, f.cone(m).rays(), lin));
  return Fan::from_maximal_cones(n, out);
}

LinearForm normalize_hyperplane(const LinearForm& h) {
  LinearForm p = primitive(h);
  for (const auto& x : p) {
    if (x == 0) continue;
    if (x < 0) p = negate(p);
    break;
  }
  return p;
}

std::vector<LinearForm> hyperplanes_of(const std::vector<Cone>& cones) {
  std::set<LinearForm, VecLess> hs;
  for (const auto& c : cones) {
    for (const auto& f : c.facets()) hs.insert(normalize_hyperplane(f));
    for (const auto& e : c.equations()) hs.insert(normalize_hyperplane(e));
  }
  return {hs.begin(), hs.end()};
}

std::vector<Cone> split_by_hyperplanes(const Cone& c, const std::vector<LinearForm>& hyperplanes) {
  std::vector<Cone> cells{c};
  for (const auto& h : hyperplanes) {
    std::vector<Cone> nxt;
    for (const auto& cell : cells) {
      bool split = false;
      for (const auto& l : cell.lineality())
        if (dot(h, l) != 0) {
          split = true;
          break;
        }
      if (!split) {
        bool pos = false, neg = false;
        for (const auto& r : cell.rays()) {
          int s = sgn(dot(h, r));
          if (s > 0) pos = true;
          if (s < 0) neg = true;
        }
        split = pos && neg;
      }
      if (!split) {
        nxt.push_back(cell);
        continue;
      }
      for (int sign : {1, -1}) {
        std::vector<LinearForm> ineq = cell.facets();
        ineq.push_back(sign > 0 ? h : negate(h));
        nxt.push_back(Cone::from_inequalities(c.ambient_dim(), ineq, cell.equations()));
      }
    }
    cells = std::move(nxt);
  }
  return cells;
}

Fan orthant_fan(std::size_t n) {
  std::vector<Cone> cones;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<LatticeVector> rs;
    for (std::size_t i = 0; i < n; ++i) {
      LatticeVector v(n, 0);
      v[i] = (mask >> i) & 1 ? -1 : 1;
      rs.push_back(v);
    }
    cones.push_back(Cone::from_rays(n, rs));
  }
  return Fan::from_maximal_cones(n, cones);
}

Fan arrangement_refinement(const Fan& f, const std::vector<LinearForm>& extra) {
  if (f.empty()) return f;
  std::vector<LinearForm> hs = hyperplanes_of(f.maximal_cones());
  for (const auto& e : extra)
    if (!is_zero(e)) hs.push_back(normalize_hyperplane(e));
  std::sort(hs.begin(), hs.end(), vec_less);
  hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
  std::vector<Cone> cells;
  for (const auto& m : f.maximal_cones()) {
    auto cs = split_by_hyperplanes(m, hs);
    cells.insert(cells.end(), cs.begin(), cs.end());
  }
  return Fan::from_maximal_cones(f.ambient_dim(), cells);
}

}  // namespace trop
