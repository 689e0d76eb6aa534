#pragma once

// Piecewise polynomials on fans and their intersection products with cycles.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trop/function.hpp"
#include "trop/polynomial.hpp"

namespace trop {

/// Continuous function restricting to a homogeneous integer polynomial of
/// fixed degree on every maximal cone. Pieces are in ambient coordinates;
/// on lower-dimensional cones they matter only up to the span of the cone.
class PiecewisePolynomial {
 public:
  PiecewisePolynomial() = default;
  PiecewisePolynomial(Fan fan, unsigned degree, std::map<std::size_t, HomPolynomial> pieces);

  static PiecewisePolynomial from_function(const RationalFanFunction& phi);
  /// One global polynomial on every maximal cone of the fan.
  static PiecewisePolynomial global(const Fan& fan, const HomPolynomial& p);
  static PiecewisePolynomial zero(const Fan& fan, unsigned degree);

  std::size_t ambient_dim() const { return fan_.ambient_dim(); }
  const Fan& fan() const { return fan_; }
  unsigned degree() const { return degree_; }
  const std::map<std::size_t, HomPolynomial>& pieces() const { return pieces_; }
  const HomPolynomial& piece(std::size_t maximal) const { return pieces_.at(maximal); }

  Rational eval(const RationalVector& x) const;
  /// The same function on a fan g refining the support.
  PiecewisePolynomial refine_to(const Fan& g) const;

 private:
  Fan fan_;
  unsigned degree_ = 0;
  std::map<std::size_t, HomPolynomial> pieces_;
};

struct PPViolation {
  std::string kind;  // "degree" or "continuity"
  std::size_t first = 0;
  std::optional<std::size_t> second;
  std::string message;
};

/// Degree, variable count and agreement of pieces on every shared face.
std::optional<PPViolation> validate_pp(const PiecewisePolynomial& f);

/// Restriction of p to span(c), in coordinates of c's lattice basis.
HomPolynomial restrict_to(const HomPolynomial& p, const Cone& c);

PiecewisePolynomial pp_add(const PiecewisePolynomial& a, const PiecewisePolynomial& b);
PiecewisePolynomial pp_scale(const Integer& k, const PiecewisePolynomial& a);
PiecewisePolynomial pp_mul(const PiecewisePolynomial& a, const PiecewisePolynomial& b);
/// Equality as functions on the union of both supports.
bool pp_equal(const PiecewisePolynomial& a, const PiecewisePolynomial& b);

/// Ψ_τ = product of Ψ_r over the rays of τ (τ needs at least one ray).
PiecewisePolynomial psi_cone(const Fan& fan, const Cone& tau);

/// Ψ_{r_1}···Ψ_{r_k} for global ray indices of a unimodular fan.
PiecewisePolynomial psi_monomial(const Fan& fan, const std::vector<std::size_t>& rays);

struct PsiTerm {
  Cone tau;
  HomPolynomial coeff;  // degree k - (number of rays of tau), ambient coordinates
};
using PsiRepresentation = std::vector<PsiTerm>;

/// f = Σ a_τ Ψ_τ over cones with at most deg f rays, on a unimodular fan.
PsiRepresentation decompose(const PiecewisePolynomial& f);
/// Σ a_τ Ψ_τ as a piecewise polynomial on the fan.
PiecewisePolynomial evaluate_representation(const Fan& fan, unsigned degree, const PsiRepresentation& rep);

struct ProductTerm {
  Integer coeff;
  std::vector<RationalFanFunction> factors;
};
using ProductForm = std::vector<ProductTerm>;

/// Expands every coefficient into monomials of coordinate forms, giving a sum
/// of products of k rational functions.
ProductForm to_products(const Fan& fan, unsigned degree, const PsiRepresentation& rep);

/// Audit trail of one intersection.
struct IntersectionTrace {
  Fan fan;  // the unimodular structure used
  PsiRepresentation representation;
  ProductForm products;
};

/// f·X through a Ψ-representation on a common unimodular refinement.
TropicalCycle pp_intersect(const PiecewisePolynomial& f, const TropicalCycle& x, IntersectionTrace* trace = nullptr);

/// Local intersection at a point: f is the germ (constants dropped) and x the
/// star of the cycle there, both as fan data at the origin.
TropicalCycle germ_intersect(const PiecewisePolynomial& germ, const TropicalCycle& star);

/// The direct weight formula on a complete unimodular pointed fan.
TropicalCycle katz_payne(const PiecewisePolynomial& f);
/// Same after transferring f onto the refinement delta.
TropicalCycle katz_payne(const PiecewisePolynomial& f, const Fan& delta);

bool is_lpp_on_complete_fan(const PiecewisePolynomial& f);

/// Some f on delta with katz_payne(f) = c.
PiecewisePolynomial invert_duality(const Fan& delta, const TropicalCycle& c);

/// f ∘ π on the preimage fan.
PiecewisePolynomial pp_pullback(const MorphismZ& pi, const PiecewisePolynomial& f);

}  // namespace trop
