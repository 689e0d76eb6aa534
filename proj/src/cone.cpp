#include "trop/cone.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>

namespace trop {

bool vec_less(const LatticeVector& a, const LatticeVector& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

namespace {

int vec_cmp(const LatticeVector& a, const LatticeVector& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

int list_cmp(const std::vector<LatticeVector>& a, const std::vector<LatticeVector>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = vec_cmp(a[i], b[i]);
    if (c != 0) return c;
  }
  return 0;
}

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
  void set(std::size_t i) {
    if (i / 64 >= w_.size()) w_.resize(i / 64 + 1, 0);
    w_[i / 64] |= (std::uint64_t{1} << (i % 64));
  }
  Bits operator&(const Bits& o) const {
    Bits r;
    r.w_.resize(std::min(w_.size(), o.w_.size()));
    for (std::size_t i = 0; i < r.w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
    return r;
  }
  bool contains(const Bits& o) const {
    for (std::size_t i = 0; i < o.w_.size(); ++i) {
      std::uint64_t mine = i < w_.size() ? w_[i] : 0;
      if ((o.w_[i] & ~mine) != 0) return false;
    }
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(__builtin_popcountll(x));
    return c;
  }

 private:
  std::vector<std::uint64_t> w_;
};

LatticeVector make_primitive(const LatticeVector& v) { return primitive(v); }

std::vector<LatticeVector> nonzero_only(const std::vector<LatticeVector>& vs) {
  std::vector<LatticeVector> out;
  for (const auto& v : vs)
    if (!is_zero(v)) out.push_back(v);
  return out;
}

std::vector<LatticeVector> rows_of(const IntegerMatrix& m) { return m.row_list(); }

void check_dims(std::size_t n, const std::vector<LatticeVector>& vs) {
  for (const auto& v : vs)
    if (v.size() != n) throw InputError("vector dimension does not match ambient dimension");
}

}  // namespace

GeneratorPair double_description(std::size_t n, const std::vector<LinearForm>& inequalities,
                                 const std::vector<LinearForm>& equations) {
  std::vector<LatticeVector> lin;
  {
    auto eqs = nonzero_only(equations);
    if (eqs.empty()) {
      lin = rows_of(IntegerMatrix::identity(n));
    } else {
      lin = integer_kernel(IntegerMatrix(n, eqs));
    }
  }
  std::vector<LatticeVector> rays;
  std::vector<Bits> tight;
  std::size_t processed = 0;

  for (const auto& a_raw : inequalities) {
    if (is_zero(a_raw)) continue;
    const LinearForm& a = a_raw;
    const std::size_t idx = processed++;

    std::size_t b0 = lin.size();
    for (std::size_t i = 0; i < lin.size(); ++i)
      if (dot(a, lin[i]) != 0) {
        b0 = i;
        break;
      }

    if (b0 < lin.size()) {
      LatticeVector b = lin[b0];
      Integer ab = dot(a, b);
      if (ab < 0) {
        b = negate(b);
        ab = -ab;
      }
      std::vector<LatticeVector> new_lin;
      for (std::size_t i = 0; i < lin.size(); ++i) {
        if (i == b0) continue;
        Integer av = dot(a, lin[i]);
        LatticeVector w = av == 0 ? lin[i] : sub(scale(ab, lin[i]), scale(av, b));
        new_lin.push_back(make_primitive(w));
      }
      for (std::size_t i = 0; i < rays.size(); ++i) {
        Integer av = dot(a, rays[i]);
        if (av != 0) rays[i] = make_primitive(sub(scale(ab, rays[i]), scale(av, b)));
        tight[i].set(idx);
      }
      // b was orthogonal to every earlier inequality.
      Bits bt;
      for (std::size_t j = 0; j < idx; ++j) bt.set(j);
      rays.push_back(make_primitive(b));
      tight.push_back(bt);
      lin = std::move(new_lin);
      continue;
    }

    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i]);
      if (val[i] > 0)
        pos.push_back(i);
      else if (val[i] < 0)
        neg.push_back(i);
    }
    if (neg.empty()) {
      for (std::size_t i = 0; i < rays.size(); ++i)
        if (val[i] == 0) tight[i].set(idx);
      continue;
    }

    std::vector<LatticeVector> new_rays;
    std::vector<Bits> new_tight;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (val[i] < 0) continue;
      Bits t = tight[i];
      if (val[i] == 0) t.set(idx);
      new_rays.push_back(rays[i]);
      new_tight.push_back(t);
    }
    // Pointed dimension of the current cone bounds the needed tight count.
    std::vector<LatticeVector> span = lin;
    span.insert(span.end(), rays.begin(), rays.end());
    const std::size_t pdim = rank_of(n, span) - lin.size();
    for (std::size_t p : pos)
      for (std::size_t q : neg) {
        Bits common = tight[p] & tight[q];
        if (pdim >= 2 && common.count() + 2 < pdim) continue;
        bool adjacent = true;
        for (std::size_t t = 0; t < rays.size() && adjacent; ++t) {
          if (t == p || t == q) continue;
          if (tight[t].contains(common)) adjacent = false;
        }
        if (!adjacent) continue;
        LatticeVector r = sub(scale(val[p], rays[q]), scale(val[q], rays[p]));
        if (is_zero(r)) continue;
        common.set(idx);
        new_rays.push_back(make_primitive(r));
        new_tight.push_back(common);
      }
    rays = std::move(new_rays);
    tight = std::move(new_tight);
  }
  return {lin, rays};
}

// ---------------------------------------------------------------------------

Cone Cone::build(std::size_t n, std::vector<LatticeVector> lineality, std::vector<LatticeVector> rays,
                 std::vector<LinearForm> equations, std::vector<LinearForm> facets) {
  Cone c;
  c.n_ = n;
  IntegerMatrix lin = saturate(n, lineality);
  c.lineality_ = lin.row_list();
  LatticeQuotient lq(n, c.lineality_);
  std::vector<LatticeVector> rs;
  for (const auto& r : rays)
    if (!lq.in_span(r)) rs.push_back(lq.canonical(r));
  std::sort(rs.begin(), rs.end(), vec_less);
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  c.rays_ = std::move(rs);
  {
    std::vector<LatticeVector> all = c.lineality_;
    all.insert(all.end(), c.rays_.begin(), c.rays_.end());
    c.dim_ = rank_of(n, all);
  }
  IntegerMatrix eq = saturate(n, equations);
  c.equations_ = eq.row_list();
  LatticeQuotient eqq(n, c.equations_);
  std::vector<LinearForm> fs;
  for (const auto& f : facets)
    if (!eqq.in_span(f)) fs.push_back(eqq.canonical(f));
  std::sort(fs.begin(), fs.end(), vec_less);
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
  c.facets_ = std::move(fs);
  return c;
}

Cone Cone::from_rays(std::size_t n, const std::vector<LatticeVector>& rays_in,
                     const std::vector<LatticeVector>& lineality_in) {
  check_dims(n, rays_in);
  check_dims(n, lineality_in);
  std::vector<LatticeVector> rays = nonzero_only(rays_in);
  std::vector<LatticeVector> lin = nonzero_only(lineality_in);
  if (!rays.empty()) {
    // Deduplicate positive multiples before the independence test.
    std::vector<LatticeVector> prim;
    for (const auto& r : rays) prim.push_back(primitive(r));
    std::sort(prim.begin(), prim.end(), vec_less);
    prim.erase(std::unique(prim.begin(), prim.end()), prim.end());
    rays = std::move(prim);
  }
  std::vector<LatticeVector> linb = saturate(n, lin).row_list();

  std::vector<LatticeVector> all = linb;
  all.insert(all.end(), rays.begin(), rays.end());
  if (all.empty()) {
    return build(n, {}, {}, rows_of(IntegerMatrix::identity(n)), {});
  }
  if (rank_of(n, all) == all.size()) {
    // Simplicial: facets come from kernels of all-but-one generator.
    std::vector<LinearForm> eqs = integer_kernel(IntegerMatrix(n, all));
    std::vector<LinearForm> facets;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      std::vector<LatticeVector> others = linb;
      for (std::size_t j = 0; j < rays.size(); ++j)
        if (j != i) others.push_back(rays[j]);
      std::vector<LatticeVector> ker =
          others.empty() ? rows_of(IntegerMatrix::identity(n)) : integer_kernel(IntegerMatrix(n, others));
      bool found = false;
      for (const auto& k : ker) {
        Integer v = dot(k, rays[i]);
        if (v == 0) continue;
        facets.push_back(v > 0 ? k : negate(k));
        found = true;
        break;
      }
      if (!found) throw InvariantError("simplicial facet computation failed");
    }
    return build(n, linb, rays, eqs, facets);
  }

  GeneratorPair dual = double_description(n, rays, linb);
  // dual.lineality spans the equations; dual.rays are the facet normals.
  GeneratorPair primal = double_description(n, dual.rays, dual.lineality);
  return build(n, primal.lineality, primal.rays, dual.lineality, dual.rays);
}

Cone Cone::from_inequalities(std::size_t n, const std::vector<LinearForm>& inequalities,
                             const std::vector<LinearForm>& equations) {
  check_dims(n, inequalities);
  check_dims(n, equations);
  GeneratorPair g = double_description(n, inequalities, equations);
  return from_rays(n, g.rays, g.lineality);
}

Integer Cone::multiplicity() const {
  std::vector<LatticeVector> all = lineality_;
  all.insert(all.end(), rays_.begin(), rays_.end());
  return saturation_index(n_, all);
}

bool Cone::contains(const LatticeVector& x) const {
  if (x.size() != n_) throw InputError("point dimension does not match cone");
  for (const auto& e : equations_)
    if (dot(e, x) != 0) return false;
  for (const auto& f : facets_)
    if (dot(f, x) < 0) return false;
  return true;
}

bool Cone::contains(const RationalVector& x) const {
  if (x.size() != n_) throw InputError("point dimension does not match cone");
  for (const auto& e : equations_)
    if (dot(e, x) != 0) return false;
  for (const auto& f : facets_)
    if (dot(f, x) < 0) return false;
  return true;
}

bool Cone::contains(const Cone& o) const {
  for (const auto& l : o.lineality_)
    if (!contains(l) || !contains(negate(l))) return false;
  for (const auto& r : o.rays_)
    if (!contains(r)) return false;
  return true;
}

bool Cone::in_relative_interior(const LatticeVector& x) const {
  if (!contains(x)) return false;
  for (const auto& f : facets_)
    if (dot(f, x) == 0) return false;
  return true;
}

bool Cone::in_relative_interior(const RationalVector& x) const {
  if (!contains(x)) return false;
  for (const auto& f : facets_)
    if (dot(f, x) == 0) return false;
  return true;
}

LatticeVector Cone::interior_point() const {
  LatticeVector p(n_);
  for (const auto& r : rays_)
    for (std::size_t i = 0; i < n_; ++i) p[i] += r[i];
  return p;
}

RationalVector Cone::relative_interior_point() const { return to_rational(interior_point()); }

std::vector<LatticeVector> Cone::lattice_basis() const {
  std::vector<LatticeVector> all = lineality_;
  all.insert(all.end(), rays_.begin(), rays_.end());
  return saturate(n_, all).row_list();
}

std::vector<std::size_t> Cone::rays_on(const LinearForm& f) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (dot(f, rays_[i]) == 0) out.push_back(i);
  return out;
}

std::vector<std::vector<std::size_t>> Cone::face_ray_sets() const {
  // Faces are intersections of facets; track them by their ray sets.
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::vector<std::size_t>> queue;
  std::vector<std::size_t> all(rays_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  seen.insert(all);
  queue.push_back(all);
  std::vector<std::vector<std::size_t>> on;
  for (const auto& f : facets_) on.push_back(rays_on(f));
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const auto cur = queue[qi];
    for (const auto& fr : on) {
      std::vector<std::size_t> nxt;
      std::set_intersection(cur.begin(), cur.end(), fr.begin(), fr.end(), std::back_inserter(nxt));
      if (nxt.size() == cur.size()) continue;
      if (seen.insert(nxt).second) queue.push_back(nxt);
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<Cone> Cone::faces() const {
  std::vector<Cone> out;
  for (const auto& s : face_ray_sets()) {
    if (s.size() == rays_.size()) {
      out.push_back(*this);
      continue;
    }
    std::vector<LatticeVector> rs;
    for (auto i : s) rs.push_back(rays_[i]);
    out.push_back(from_rays(n_, rs, lineality_));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Cone> Cone::facet_cones() const {
  std::vector<Cone> out;
  for (const auto& f : facets_) {
    std::vector<LatticeVector> rs;
    for (auto i : rays_on(f)) rs.push_back(rays_[i]);
    out.push_back(from_rays(n_, rs, lineality_));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Cone::is_face_of(const Cone& big) const {
  if (n_ != big.n_ || !big.contains(*this)) return false;
  std::vector<LinearForm> vanishing;
  for (const auto& f : big.facets_) {
    bool all_zero = true;
    for (const auto& r : rays_)
      if (dot(f, r) != 0) {
        all_zero = false;
        break;
      }
    if (all_zero)
      for (const auto& l : lineality_)
        if (dot(f, l) != 0) {
          all_zero = false;
          break;
        }
    if (all_zero) vanishing.push_back(f);
  }
  std::vector<LatticeVector> rs;
  for (const auto& r : big.rays_) {
    bool ok = true;
    for (const auto& f : vanishing)
      if (dot(f, r) != 0) {
        ok = false;
        break;
      }
    if (ok) rs.push_back(r);
  }
  // The smallest face of big containing this cone.
  if (rs.size() == big.rays_.size() && vanishing.empty()) return *this == big;
  return from_rays(n_, rs, big.lineality_) == *this;
}

std::strong_ordering Cone::operator<=>(const Cone& o) const {
  if (n_ != o.n_) return n_ <=> o.n_;
  if (dim_ != o.dim_) return dim_ <=> o.dim_;
  int c = list_cmp(lineality_, o.lineality_);
  if (c == 0) c = list_cmp(rays_, o.rays_);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

bool Cone::operator==(const Cone& o) const { return (*this <=> o) == 0; }

std::string Cone::to_string() const {
  std::ostringstream os;
  os << "cone<";
  for (std::size_t i = 0; i < rays_.size(); ++i) os << (i ? "," : "") << trop::to_string(rays_[i]);
  if (!lineality_.empty()) {
    os << " | lin ";
    for (std::size_t i = 0; i < lineality_.size(); ++i) os << (i ? "," : "") << trop::to_string(lineality_[i]);
  }
  os << '>';
  return os.str();
}

Cone intersect(const Cone& a, const Cone& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw InputError("cones in different ambient dimensions");
  std::vector<LinearForm> ineq = a.facets();
  ineq.insert(ineq.end(), b.facets().begin(), b.facets().end());
  std::vector<LinearForm> eq = a.equations();
  eq.insert(eq.end(), b.equations().begin(), b.equations().end());
  return Cone::from_inequalities(a.ambient_dim(), ineq, eq);
}

}  // namespace trop
