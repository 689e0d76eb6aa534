#pragma once

// JSON forms of the core types. Coordinates, weights and coefficients are
// decimal strings; dimensions, indices and exponents are plain integers.

#include <string>

#include "json.hpp"
#include "trop/matroid.hpp"
#include "trop/pwpoly.hpp"

namespace trop {

using Json = nlohmann::json;

Json load_json(const std::string& path);

Integer integer_from_json(const Json& j);
Json to_json(const Integer& x);
LatticeVector vector_from_json(const Json& j, std::size_t n);
Json to_json(const LatticeVector& v);

/// {"ambient_dim", "rays", "lineality", "cones"}; cones index into rays.
Fan fan_from_json(const Json& j);
Json to_json(const Fan& f);

/// Fan fields plus "dim" and "weights" parallel to "cones". The cones are
/// the weighted cones; overlapping cones are allowed.
TropicalCycle cycle_from_json(const Json& j);
Json to_json(const TropicalCycle& c);
/// {"origin": w} for points, otherwise keyed by the cone's rays.
Json weights_json(const TropicalCycle& c);

/// Fan fields plus "linear_parts" or "ray_values" (with optional
/// "lineality_values"), or just {"ambient_dim", "max_of"}.
RationalFanFunction function_from_json(const Json& j);
Json to_json(const RationalFanFunction& f);

/// {"degree", "terms": [{"exps", "coeff"}]}.
HomPolynomial polynomial_from_json(const Json& j, std::size_t nvars);
Json to_json(const HomPolynomial& p);

/// Fan fields plus "degree" and "pieces" parallel to "cones". A document
/// with only "degree" and "pieces" takes its fan fields from `fan`.
PiecewisePolynomial pp_from_json(const Json& j, const Json* fan = nullptr);
Json to_json(const PiecewisePolynomial& f);

/// {"n", "bases"} with 1-indexed elements.
Matroid matroid_from_json(const Json& j);
Json to_json(const Matroid& m);

Json to_json(const Cone& c);
Json to_json(const PsiRepresentation& rep);
Json to_json(const ProductForm& pf);

}  // namespace trop
