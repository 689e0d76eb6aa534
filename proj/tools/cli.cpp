#include "cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "trop/json_io.hpp"

namespace trop::cli {

namespace {

// Balancing violation reported with exit code 2.
struct Violation {
  Json detail;
};

struct Options {
  std::string fan, cycle, pp, function, matroid, sub, output, refine, format = "json", point, matrix;
  std::vector<std::size_t> forget;
  bool verbose = false;
};

Json require(const std::string& path, const char* flag) {
  if (path.empty()) throw InputError(std::string("missing --") + flag);
  return load_json(path);
}

bool refine_unimodular(const Options& o) {
  if (o.refine.empty()) return false;
  if (o.refine != "unimodular") throw InputError("--refine accepts only \"unimodular\"");
  return true;
}

Json balancing_certificate(const TropicalCycle& c) {
  if (auto v = check_balancing(c)) {
    Json d;
    d["kind"] = "balancing";
    d["message"] = "balancing fails at " + (v->tau_cone.dim() == 0 ? std::string("origin") : v->tau_cone.to_string());
    d["at"] = v->tau_cone.dim() == 0 ? Json("origin") : Json(v->tau_cone.to_string());
    d["defect"] = to_json(v->defect);
    throw Violation{d};
  }
  return "ok";
}

Json cycle_result(const TropicalCycle& c) {
  Json j;
  j["cycle"] = to_json(c);
  j["weights"] = weights_json(c);
  j["certificates"]["balancing"] = balancing_certificate(c);
  return j;
}

PiecewisePolynomial load_pp(const Options& o) {
  Json p = require(o.pp, "pp");
  if (o.fan.empty()) return pp_from_json(p);
  Json f = load_json(o.fan);
  return pp_from_json(p, &f);
}

// Moves f onto a unimodular refinement when asked, else explains the failure.
PiecewisePolynomial unimodular_pp(const Options& o, PiecewisePolynomial f) {
  if (f.fan().is_unimodular()) return f;
  if (!refine_unimodular(o)) throw InputError("fan is not unimodular; pass --refine unimodular to refine it");
  return f.refine_to(unimodular_refinement(f.fan()));
}

Json cmd_validate_fan(const Options& o) {
  Json j = require(o.fan, "fan");
  Fan f = fan_from_json(j);
  if (auto v = f.validate()) throw InputError("invalid fan: " + v->message);
  Json out;
  out["valid"] = true;
  out["fan"] = to_json(f);
  auto& c = out["certificates"];
  c["intersections"] = "ok";
  c["complete"] = f.is_complete();
  c["pointed"] = f.is_pointed();
  c["simplicial"] = f.is_simplicial();
  c["unimodular"] = f.is_unimodular();
  c["dim"] = f.dim();
  return out;
}

Json cmd_balance(const Options& o) {
  TropicalCycle c = cycle_from_json(require(o.cycle, "cycle"));
  Json out = cycle_result(c);
  out["balanced"] = true;
  out["certificates"]["codim1_cones_checked"] = c.is_zero() || c.dim() == 0 ? 0 : c.fan().cones_of_dim(c.dim() - 1).size();
  return out;
}

Json cmd_divisor(const Options& o) {
  RationalFanFunction phi = function_from_json(require(o.function, "function"));
  TropicalCycle x = cycle_from_json(require(o.cycle, "cycle"));
  balancing_certificate(x);
  Json out = cycle_result(divisor(phi, x));
  out["certificates"]["input_balancing"] = "ok";
  return out;
}

Json cmd_pp_validate(const Options& o) {
  PiecewisePolynomial f = load_pp(o);
  if (auto v = validate_pp(f)) throw InputError("invalid piecewise polynomial (" + v->kind + "): " + v->message);
  Json out;
  out["valid"] = true;
  out["degree"] = f.degree();
  out["certificates"]["continuity"] = "ok";
  out["certificates"]["degree"] = "ok";
  return out;
}

Json cmd_pp_intersect(const Options& o) {
  PiecewisePolynomial f = load_pp(o);
  if (auto v = validate_pp(f)) throw InputError("invalid piecewise polynomial (" + v->kind + "): " + v->message);
  TropicalCycle x = cycle_from_json(require(o.cycle, "cycle"));
  balancing_certificate(x);
  IntersectionTrace trace;
  Json out = cycle_result(pp_intersect(f, x, &trace));
  out["certificates"]["input_balancing"] = "ok";
  out["certificates"]["unimodular_structure"] = trace.fan.is_unimodular();
  if (o.verbose) {
    out["representation"] = to_json(trace.representation);
    out["products"] = to_json(trace.products);
  }
  return out;
}

Json cmd_katz_payne(const Options& o) {
  PiecewisePolynomial f = load_pp(o);
  if (auto v = validate_pp(f)) throw InputError("invalid piecewise polynomial (" + v->kind + "): " + v->message);
  f = unimodular_pp(o, f);
  Json out = cycle_result(katz_payne(f));
  out["certificates"]["integrality"] = "ok";
  out["certificates"]["constant_in_evaluation_point"] = "ok";
  if (o.verbose) out["fan"] = to_json(f.fan());
  return out;
}

Json cmd_decompose(const Options& o) {
  PiecewisePolynomial f = load_pp(o);
  if (auto v = validate_pp(f)) throw InputError("invalid piecewise polynomial (" + v->kind + "): " + v->message);
  f = unimodular_pp(o, f);
  PsiRepresentation rep = decompose(f);
  if (!pp_equal(evaluate_representation(f.fan(), f.degree(), rep), f))
    throw InvariantError("representation does not reproduce the piecewise polynomial");
  Json out;
  out["representation"] = to_json(rep);
  out["certificates"]["reconstruction"] = "ok";
  out["certificates"]["residual_zero"] = "ok";
  if (o.verbose) out["products"] = to_json(to_products(f.fan(), f.degree(), rep));
  return out;
}

Json cmd_invert(const Options& o) {
  Fan delta = fan_from_json(require(o.fan, "fan"));
  TropicalCycle c = cycle_from_json(require(o.cycle, "cycle"));
  balancing_certificate(c);
  if (refine_unimodular(o)) {
    std::vector<Cone> cs;
    for (const auto& [cone, w] : c.weighted_cones()) cs.push_back(cone);
    delta = unimodular_refinement(arrangement_refinement(delta, hyperplanes_of(cs)));
  } else if (!delta.is_unimodular()) {
    throw InputError("fan is not unimodular; pass --refine unimodular to refine it");
  }
  PiecewisePolynomial f = invert_duality(delta, c);
  Json out;
  out["pp"] = to_json(f);
  out["certificates"]["weight_formula_roundtrip"] = "ok";
  out["certificates"]["input_balancing"] = "ok";
  return out;
}

Json cmd_bergman(const Options& o) {
  Matroid m = matroid_from_json(require(o.matroid, "matroid"));
  TropicalCycle b = bergman_fan(m);
  Json out = cycle_result(b);
  out["certificates"]["dim_equals_rank"] = b.dim() == m.rank();
  bool ones = true;
  for (const auto& [i, w] : b.weights()) ones = ones && w == 1;
  out["certificates"]["weights_one"] = ones;
  return out;
}

Json cmd_rank_cut(const Options& o) {
  Matroid m = matroid_from_json(require(o.matroid, "matroid"));
  Matroid n = matroid_from_json(require(o.sub, "sub"));
  auto fs = rank_cut_functions(m, n);
  TropicalCycle x = bergman_fan(m);
  for (const auto& f : fs) x = divisor(f, x);
  const bool match = equals_mod_refinement(x, bergman_fan(n));
  Json out;
  out["functions"] = Json::array();
  for (const auto& f : fs) out["functions"].push_back(to_json(f));
  out["certificates"]["product_equals_trop_N"] = match;
  if (!match) throw InputError("trop(N) is not cut out; is it contained in trop(M)?");
  return out;
}

Json cmd_cut(const Options& o) {
  Matroid m = matroid_from_json(require(o.matroid, "matroid"));
  TropicalCycle c = cycle_from_json(require(o.cycle, "cycle"));
  CutReport rep;
  PiecewisePolynomial f = cut_subcycle(m, c, &rep);
  Json out;
  out["pp"] = to_json(f);
  out["certificates"]["residual_zero"] = rep.residual.is_zero();
  out["certificates"]["product_matches"] = "ok";
  out["certificates"]["recursive_calls"] = rep.calls;
  out["certificates"]["base_cases"] = rep.base_cases;
  return out;
}

Json cmd_pushforward(const Options& o) {
  TropicalCycle c = cycle_from_json(require(o.cycle, "cycle"));
  MorphismZ pi;
  if (!o.matrix.empty()) {
    Json j = load_json(o.matrix);
    if (!j.is_array() || j.empty()) throw InputError("matrix must be a nonempty list of rows");
    std::vector<LatticeVector> rows;
    for (const auto& r : j) rows.push_back(vector_from_json(r, c.ambient_dim()));
    pi.matrix = IntegerMatrix(c.ambient_dim(), rows);
  } else {
    if (o.forget.empty()) throw InputError("pushforward needs --forget or --matrix");
    std::vector<std::size_t> drop;
    for (auto i : o.forget) {
      if (i < 1 || i > c.ambient_dim()) throw InputError("--forget index outside 1..n");
      drop.push_back(i - 1);
    }
    std::sort(drop.begin(), drop.end());
    drop.erase(std::unique(drop.begin(), drop.end()), drop.end());
    pi = MorphismZ::forget(c.ambient_dim(), drop);
  }
  return cycle_result(push_forward(pi, c));
}

Json cmd_verify_duality(const Options& o) {
  Matroid m = matroid_from_json(require(o.matroid, "matroid"));
  RationalFanFunction phi = function_from_json(require(o.function, "function"));
  Codim1Certificate cert = verify_codim1_duality(m, phi);
  Json out;
  out["divisor_zero"] = cert.divisor_zero;
  if (!cert.divisor_zero) {
    out["divisor"] = to_json(cert.divisor);
    out["weights"] = weights_json(cert.divisor);
  }
  Json fails = Json::array();
  for (auto f : cert.failures) {
    Json e = Json::array();
    for (std::size_t i = 0; i < m.ground_size(); ++i)
      if (f & (ElementSet(1) << i)) e.push_back(i + 1);
    fails.push_back(e);
  }
  out["certificates"]["flat_identity_failures"] = fails;
  out["certificates"]["flat_identity"] = cert.divisor_zero ? Json(cert.failures.empty()) : Json("not applicable");
  if (cert.witness) out["certificates"]["witness"] = to_json(*cert.witness);
  if (cert.divisor_zero && !cert.failures.empty())
    throw InvariantError("zero divisor but the flat identity fails");
  return out;
}

Json cmd_star(const Options& o) {
  TropicalCycle c = cycle_from_json(require(o.cycle, "cycle"));
  if (o.point.empty()) throw InputError("star needs --point");
  LatticeVector p;
  std::stringstream ss(o.point);
  std::string tok;
  while (std::getline(ss, tok, ',')) p.push_back(integer_from_json(Json(tok)));
  if (p.size() != c.ambient_dim()) throw InputError("--point has the wrong length");
  auto idx = c.fan().locate(to_rational(p));
  if (!idx) throw InputError("point is not in the support of the cycle");
  return cycle_result(star_cycle(c, c.fan().cone(*idx)));
}

Json error_json(const char* kind, const std::string& message) {
  Json j;
  j["error"]["kind"] = kind;
  j["error"]["message"] = message;
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact tropical intersection theory with piecewise polynomials"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json"}));
  app.add_option("-o,--output", o.output, "Write the result here instead of stdout");
  app.add_flag("-v,--verbose", o.verbose, "Include the Ψ representation and product audit trail");
  app.add_option("--refine", o.refine, "Refine automatically where a unimodular fan is required")
      ->check(CLI::IsMember({"unimodular"}));

  using Handler = std::function<Json(const Options&)>;
  std::vector<std::pair<CLI::App*, Handler>> subs;
  auto sub = [&](const char* name, const char* help, Handler h) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    subs.emplace_back(s, h);
    return s;
  };
  sub("validate-fan", "Check that a fan is well formed", cmd_validate_fan)->add_option("--fan", o.fan)->required();
  sub("balance", "Check the balancing condition", cmd_balance)->add_option("--cycle", o.cycle)->required();
  {
    auto* s = sub("divisor", "Intersect a cycle with a rational function", cmd_divisor);
    s->add_option("--function", o.function)->required();
    s->add_option("--cycle", o.cycle)->required();
  }
  {
    auto* s = sub("pp-validate", "Check continuity and degrees of a piecewise polynomial", cmd_pp_validate);
    s->add_option("--pp", o.pp)->required();
    s->add_option("--fan", o.fan);
  }
  {
    auto* s = sub("pp-intersect", "Intersect a cycle with a piecewise polynomial", cmd_pp_intersect);
    s->add_option("--pp", o.pp)->required();
    s->add_option("--fan", o.fan);
    s->add_option("--cycle", o.cycle)->required();
  }
  {
    auto* s = sub("katz-payne", "Weights of a piecewise polynomial on a complete fan", cmd_katz_payne);
    s->add_option("--pp", o.pp)->required();
    s->add_option("--fan", o.fan);
  }
  {
    auto* s = sub("decompose", "Ψ representation of a piecewise polynomial", cmd_decompose);
    s->add_option("--pp", o.pp)->required();
    s->add_option("--fan", o.fan);
  }
  {
    auto* s = sub("invert", "Piecewise polynomial with prescribed weights", cmd_invert);
    s->add_option("--fan", o.fan)->required();
    s->add_option("--cycle", o.cycle)->required();
  }
  sub("bergman", "Bergman fan of a matroid", cmd_bergman)->add_option("--matroid", o.matroid)->required();
  {
    auto* s = sub("rank-cut", "Rank functions cutting trop(N) out of trop(M)", cmd_rank_cut);
    s->add_option("--matroid", o.matroid)->required();
    s->add_option("--sub", o.sub)->required();
  }
  {
    auto* s = sub("cut", "Piecewise polynomial cutting a subcycle out of trop(M)", cmd_cut);
    s->add_option("--matroid", o.matroid)->required();
    s->add_option("--cycle", o.cycle)->required();
  }
  {
    auto* s = sub("pushforward", "Push a cycle forward along a linear map", cmd_pushforward);
    s->add_option("--cycle", o.cycle)->required();
    s->add_option("--forget", o.forget, "1-indexed coordinates to forget");
    s->add_option("--matrix", o.matrix, "JSON file with the rows of an integer matrix");
  }
  {
    auto* s = sub("verify-duality", "Codimension one duality on trop(M)", cmd_verify_duality);
    s->add_option("--matroid", o.matroid)->required();
    s->add_option("--function", o.function)->required();
  }
  {
    auto* s = sub("star", "Star of a cycle at a point", cmd_star);
    s->add_option("--cycle", o.cycle)->required();
    s->add_option("--point", o.point, "Comma-separated integer coordinates")->required();
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    out << error_json("input", e.what()).dump(2) << '\n';
    err << e.what() << '\n';
    return 1;
  }

  Json result;
  int code = 0;
  try {
    for (const auto& [s, h] : subs)
      if (s->parsed()) result = h(o);
  } catch (const Violation& v) {
    result["error"] = v.detail;
    result["error"]["kind"] = "invariant";
    code = 2;
  } catch (const InputError& e) {
    result = error_json("input", e.what());
    code = 1;
  } catch (const InvariantError& e) {
    result = error_json("invariant", e.what());
    code = 2;
  } catch (const std::exception& e) {
    result = error_json("input", e.what());
    code = 1;
  }
  if (code != 0) err << result["error"]["message"].get<std::string>() << '\n';
  const std::string text = result.dump(2) + "\n";
  if (o.output.empty()) {
    out << text;
  } else {
    std::ofstream f(o.output);
    if (!f) {
      err << "cannot write " << o.output << '\n';
      return 1;
    }
    f << text;
  }
  return code;
}

}  // namespace trop::cli
