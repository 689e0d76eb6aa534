#pragma once

// Rational fan functions: continuous functions that are integer linear on
// every cone of a fan.

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "trop/cycle.hpp"

namespace trop {

class RationalFanFunction {
 public:
  RationalFanFunction() = default;
  /// Forms keyed by maximal cone index. Each form is reduced modulo the
  /// forms vanishing on its cone, so equal functions compare equal.
  RationalFanFunction(Fan fan, const std::map<std::size_t, LinearForm>& forms);

  /// The unique cone-wise linear function on a simplicial fan with the given
  /// values at fan.rays() and at the lineality basis fan.lineality().
  static RationalFanFunction from_ray_values(const Fan& fan, const std::vector<Integer>& ray_values,
                                             const std::vector<Integer>& lineality_values = {});
  /// The global linear form l restricted to the fan.
  static RationalFanFunction linear(const Fan& fan, const LinearForm& l);

  std::size_t ambient_dim() const { return fan_.ambient_dim(); }
  const Fan& fan() const { return fan_; }
  const std::map<std::size_t, LinearForm>& forms() const { return forms_; }
  /// Form of any maximal cone containing cone i.
  const LinearForm& form_on(std::size_t i) const;

  Rational eval(const RationalVector& x) const;
  Integer eval(const LatticeVector& x) const;

  /// First pair of maximal cones whose forms disagree on a shared face.
  std::optional<std::pair<std::size_t, std::size_t>> continuity_violation() const;
  /// True iff a single linear form agrees with the function on the support.
  bool is_globally_linear() const;
  /// The same function on a fan g refining the support.
  RationalFanFunction refine_to(const Fan& g) const;

  bool operator==(const RationalFanFunction& o) const { return fan_ == o.fan_ && forms_ == o.forms_; }

 private:
  Fan fan_;
  std::map<std::size_t, LinearForm> forms_;
};

RationalFanFunction function_add(const RationalFanFunction& a, const RationalFanFunction& b);
RationalFanFunction function_scale(const Integer& k, const RationalFanFunction& a);

/// max of the forms, on the fan of its domains of linearity.
RationalFanFunction from_tropical_polynomial(std::size_t n, const std::vector<LinearForm>& forms);

/// Ψ_r on a unimodular fan: 1 at the ray, 0 at every other ray and on the
/// lineality space.
RationalFanFunction psi_ray(const Fan& fan, std::size_t ray);
RationalFanFunction psi_ray(const Fan& fan, const LatticeVector& ray);

/// Values at fan.rays() and at the lineality basis.
struct RayValues {
  std::vector<Integer> rays;
  std::vector<Integer> lineality;
};
RayValues express_in_psi(const RationalFanFunction& phi);

/// Picks a representative of the normal vector of sigma relative to tau.
using NormalChooser = std::function<LatticeVector(const Cone& sigma, const Cone& tau)>;

/// The intersection product φ·X on the common refinement of both fans.
TropicalCycle divisor(const RationalFanFunction& phi, const TropicalCycle& x, const NormalChooser& normals = {});

/// Preimage fan of target under the integer matrix, with the target maximal
/// cone each source maximal cone maps into.
struct Preimage {
  Fan fan;
  std::map<std::size_t, std::size_t> target_of;
};
Preimage preimage_fan(const IntegerMatrix& m, const Fan& target);

/// φ ∘ π on the preimage fan.
RationalFanFunction pullback_function(const MorphismZ& pi, const RationalFanFunction& phi);

/// l ∘ m for a form l on the target.
LinearForm pull_form(const IntegerMatrix& m, const LinearForm& l);

}  // namespace trop
