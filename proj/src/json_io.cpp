#include "trop/json_io.hpp"

#include <fstream>

namespace trop {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t size_from_json(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw InputError(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

std::vector<LatticeVector> vectors_from_json(const Json& j, std::size_t n) {
  if (!j.is_array()) throw InputError("expected a list of vectors");
  std::vector<LatticeVector> out;
  for (const auto& v : j) out.push_back(vector_from_json(v, n));
  return out;
}

struct IndexedFan {
  std::size_t n = 0;
  std::vector<LatticeVector> rays;
  std::vector<LatticeVector> lineality;
  std::vector<std::vector<std::size_t>> cones;

  Cone cone(std::size_t i) const {
    std::vector<LatticeVector> rs;
    for (auto r : cones[i]) rs.push_back(rays[r]);
    return Cone::from_rays(n, rs, lineality);
  }
};

IndexedFan indexed_from_json(const Json& j) {
  IndexedFan f;
  f.n = size_from_json(field(j, "ambient_dim"), "ambient_dim");
  f.rays = j.contains("rays") ? vectors_from_json(j.at("rays"), f.n) : std::vector<LatticeVector>{};
  f.lineality = j.contains("lineality") ? vectors_from_json(j.at("lineality"), f.n) : std::vector<LatticeVector>{};
  const Json& cs = field(j, "cones");
  if (!cs.is_array()) throw InputError("\"cones\" must be a list");
  for (const auto& c : cs) {
    if (!c.is_array()) throw InputError("each cone must be a list of ray indices");
    std::vector<std::size_t> idx;
    for (const auto& i : c) {
      std::size_t r = size_from_json(i, "ray index");
      if (r >= f.rays.size()) throw InputError("ray index out of range");
      idx.push_back(r);
    }
    f.cones.push_back(idx);
  }
  return f;
}

Fan fan_of(const IndexedFan& f) {
  return Fan::from_indexed(f.n, f.rays, f.lineality, f.cones, true);
}

// Ray lists of the given maximal cones of fan, indexing fan.rays().
Json fan_fields(const Fan& f, const std::vector<std::size_t>& maximal) {
  Json j;
  j["ambient_dim"] = f.ambient_dim();
  j["rays"] = Json::array();
  for (const auto& r : f.rays()) j["rays"].push_back(to_json(r));
  j["lineality"] = Json::array();
  for (const auto& l : f.lineality()) j["lineality"].push_back(to_json(l));
  j["cones"] = Json::array();
  for (auto m : maximal) j["cones"].push_back(f.ray_indices(m));
  return j;
}

}  // namespace

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (!j.is_string()) throw InputError("expected an integer or a decimal string");
  const std::string s = j.get<std::string>();
  std::size_t start = !s.empty() && (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
    throw InputError("not a decimal integer: \"" + s + "\"");
  return Integer(s[0] == '+' ? s.substr(1) : s, 10);
}

Json to_json(const Integer& x) { return x.get_str(); }

LatticeVector vector_from_json(const Json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) throw InputError("expected a vector of length " + std::to_string(n));
  LatticeVector v;
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

Json to_json(const LatticeVector& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(to_json(x));
  return j;
}

Fan fan_from_json(const Json& j) { return fan_of(indexed_from_json(j)); }

Json to_json(const Fan& f) { return fan_fields(f, f.maximal()); }

TropicalCycle cycle_from_json(const Json& j) {
  IndexedFan f = indexed_from_json(j);
  const Json& ws = field(j, "weights");
  if (!ws.is_array() || ws.size() != f.cones.size()) throw InputError("\"weights\" must parallel \"cones\"");
  std::vector<WeightedCone> cones;
  std::optional<std::size_t> dim;
  if (j.contains("dim")) dim = size_from_json(j.at("dim"), "dim");
  for (std::size_t i = 0; i < f.cones.size(); ++i) {
    Cone c = f.cone(i);
    if (!dim) dim = c.dim();
    if (c.dim() != *dim) throw InputError("weighted cones of different dimensions");
    cones.emplace_back(c, integer_from_json(ws[i]));
  }
  if (!dim) throw InputError("an empty cycle needs \"dim\"");
  Fan closed = fan_of(f);
  if (!closed.validate()) return TropicalCycle::from_compatible_cones(f.n, *dim, cones);
  return TropicalCycle::from_weighted_cones(f.n, *dim, cones);
}

Json to_json(const TropicalCycle& c) {
  std::vector<std::size_t> keys;
  Json ws = Json::array();
  for (const auto& [m, w] : c.weights()) {
    keys.push_back(m);
    ws.push_back(to_json(w));
  }
  Json j = fan_fields(c.fan(), keys);
  j["ambient_dim"] = c.ambient_dim();
  j["dim"] = c.dim();
  j["weights"] = ws;
  return j;
}

Json weights_json(const TropicalCycle& c) {
  Json j = Json::object();
  for (const auto& [cone, w] : c.weighted_cones()) j[cone.dim() == 0 ? std::string("origin") : cone.to_string()] = to_json(w);
  return j;
}

RationalFanFunction function_from_json(const Json& j) {
  if (j.contains("max_of")) {
    std::size_t n = size_from_json(field(j, "ambient_dim"), "ambient_dim");
    auto forms = vectors_from_json(j.at("max_of"), n);
    if (forms.empty()) throw InputError("\"max_of\" needs at least one form");
    return from_tropical_polynomial(n, forms);
  }
  IndexedFan f = indexed_from_json(j);
  Fan fan = fan_of(f);
  if (j.contains("ray_values")) {
    const Json& rv = j.at("ray_values");
    if (!rv.is_array() || rv.size() != f.rays.size()) throw InputError("\"ray_values\" must parallel \"rays\"");
    // Values are given for the listed rays; map them onto the fan's rays.
    std::vector<Integer> vals(fan.rays().size(), 0);
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
      auto r = fan.find_ray(f.rays[i]);
      if (!r) throw InputError("ray " + to_string(f.rays[i]) + " is not a ray of the fan");
      vals[*r] = integer_from_json(rv[i]);
    }
    std::vector<Integer> lin;
    if (j.contains("lineality_values")) {
      const Json& lv = j.at("lineality_values");
      if (!lv.is_array() || lv.size() != f.lineality.size())
        throw InputError("\"lineality_values\" must parallel \"lineality\"");
      // Values along the listed lineality basis, transferred to the fan's basis.
      RationalVector b;
      for (std::size_t i = 0; i < f.lineality.size(); ++i) b.push_back(Rational(integer_from_json(lv[i])));
      for (const auto& target : fan.lineality()) {
        IntegerMatrix m(f.n, f.lineality);
        auto c = solve_rational(to_rational(m.transpose()), to_rational(target));
        if (!c) throw InputError("lineality basis does not span the fan's lineality");
        Rational v = 0;
        for (std::size_t i = 0; i < c->size(); ++i) v += (*c)[i] * b[i];
        if (v.get_den() != 1) throw InputError("lineality values are not integral on the lattice");
        lin.push_back(v.get_num());
      }
    }
    return RationalFanFunction::from_ray_values(fan, vals, lin);
  }
  const Json& lp = field(j, "linear_parts");
  if (!lp.is_array() || lp.size() != f.cones.size()) throw InputError("\"linear_parts\" must parallel \"cones\"");
  std::map<std::size_t, LinearForm> forms;
  for (std::size_t i = 0; i < f.cones.size(); ++i) {
    std::size_t idx = fan.index_of(f.cone(i));
    for (auto m : fan.maximal_containing(idx)) forms.emplace(m, vector_from_json(lp[i], f.n));
  }
  for (auto m : fan.maximal())
    if (!forms.count(m)) throw InputError("maximal cone without a linear part");
  RationalFanFunction phi(fan, forms);
  if (auto v = phi.continuity_violation())
    throw InputError("linear parts disagree on the common face of cones " + std::to_string(v->first) + " and " +
                     std::to_string(v->second));
  return phi;
}

Json to_json(const RationalFanFunction& f) {
  Json j = to_json(f.fan());
  j["linear_parts"] = Json::array();
  for (auto m : f.fan().maximal()) j["linear_parts"].push_back(to_json(f.forms().at(m)));
  return j;
}

HomPolynomial polynomial_from_json(const Json& j, std::size_t nvars) {
  const std::size_t deg = size_from_json(field(j, "degree"), "degree");
  HomPolynomial p(nvars, static_cast<unsigned>(deg));
  const Json& ts = field(j, "terms");
  if (!ts.is_array()) throw InputError("\"terms\" must be a list");
  for (const auto& t : ts) {
    const Json& e = field(t, "exps");
    if (!e.is_array() || e.size() != nvars) throw InputError("exponent vector of wrong length");
    Exponent ex;
    std::size_t total = 0;
    for (const auto& x : e) {
      ex.push_back(static_cast<unsigned>(size_from_json(x, "exponent")));
      total += ex.back();
    }
    if (total != deg) throw InputError("term of wrong degree in a homogeneous polynomial");
    p.add_term(ex, integer_from_json(field(t, "coeff")));
  }
  return p;
}

Json to_json(const HomPolynomial& p) {
  Json j;
  j["degree"] = p.degree();
  j["terms"] = Json::array();
  for (const auto& [e, c] : p.terms()) j["terms"].push_back({{"exps", e}, {"coeff", to_json(c)}});
  return j;
}

PiecewisePolynomial pp_from_json(const Json& j, const Json* fan_json) {
  if (!j.contains("cones")) {
    if (!fan_json) throw InputError("piecewise polynomial without a fan");
    Json merged = *fan_json;
    merged["degree"] = field(j, "degree");
    merged["pieces"] = field(j, "pieces");
    return pp_from_json(merged, nullptr);
  }
  const std::size_t deg = size_from_json(field(j, "degree"), "degree");
  const Json& ps = field(j, "pieces");
  IndexedFan f = indexed_from_json(j);
  Fan fan = fan_of(f);
  if (!ps.is_array() || ps.size() != f.cones.size()) throw InputError("\"pieces\" must parallel \"cones\"");
  std::map<std::size_t, HomPolynomial> pieces;
  for (std::size_t i = 0; i < f.cones.size(); ++i) {
    HomPolynomial p = polynomial_from_json(ps[i], fan.ambient_dim());
    if (p.degree() != deg) throw InputError("piece of wrong degree");
    for (auto m : fan.maximal_containing(fan.index_of(f.cone(i)))) pieces.emplace(m, p);
  }
  for (auto m : fan.maximal())
    if (!pieces.count(m)) throw InputError("maximal cone without a piece");
  return PiecewisePolynomial(fan, static_cast<unsigned>(deg), pieces);
}

Json to_json(const PiecewisePolynomial& f) {
  Json j = to_json(f.fan());
  j["degree"] = f.degree();
  j["pieces"] = Json::array();
  for (auto m : f.fan().maximal()) j["pieces"].push_back(to_json(f.piece(m)));
  return j;
}

Matroid matroid_from_json(const Json& j) {
  const std::size_t n = size_from_json(field(j, "n"), "n");
  const Json& bs = field(j, "bases");
  if (!bs.is_array()) throw InputError("\"bases\" must be a list");
  std::vector<ElementSet> bases;
  for (const auto& b : bs) {
    if (!b.is_array()) throw InputError("each basis must be a list of elements");
    ElementSet s = 0;
    for (const auto& e : b) {
      std::size_t x = size_from_json(e, "element");
      if (x < 1 || x > n) throw InputError("element outside 1..n");
      s |= ElementSet(1) << (x - 1);
    }
    bases.push_back(s);
  }
  return Matroid::from_bases(n, bases);
}

Json to_json(const Matroid& m) {
  Json j;
  j["n"] = m.ground_size();
  j["bases"] = Json::array();
  for (auto b : m.bases()) {
    Json e = Json::array();
    for (std::size_t i = 0; i < m.ground_size(); ++i)
      if (b & (ElementSet(1) << i)) e.push_back(i + 1);
    j["bases"].push_back(e);
  }
  return j;
}

Json to_json(const Cone& c) {
  Json j;
  j["rays"] = Json::array();
  for (const auto& r : c.rays()) j["rays"].push_back(to_json(r));
  j["lineality"] = Json::array();
  for (const auto& l : c.lineality()) j["lineality"].push_back(to_json(l));
  return j;
}

Json to_json(const PsiRepresentation& rep) {
  Json j = Json::array();
  for (const auto& t : rep) j.push_back({{"tau", to_json(t.tau)}, {"coeff", to_json(t.coeff)}});
  return j;
}

Json to_json(const ProductForm& pf) {
  Json j = Json::array();
  for (const auto& t : pf) {
    Json fs = Json::array();
    for (const auto& f : t.factors) fs.push_back(to_json(f));
    j.push_back({{"coeff", to_json(t.coeff)}, {"factors", fs}});
  }
  return j;
}

}  // namespace trop
