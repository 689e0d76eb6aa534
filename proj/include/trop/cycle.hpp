#pragma once

// Tropical fan cycles: weighted pure fans satisfying the balancing condition.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "trop/fan.hpp"

namespace trop {

using WeightedCone = std::pair<Cone, Integer>;

/// A weighted fan of pure dimension d. The fan is exactly the face closure
/// of the weighted cones; zero weights are never stored. The zero cycle has
/// an empty fan but keeps its ambient dimension and dimension.
class TropicalCycle {
 public:
  TropicalCycle() = default;

  static TropicalCycle zero(std::size_t n, std::size_t d);
  /// Weights keyed by cone index of f; every weighted cone has dimension d.
  static TropicalCycle from_fan(std::size_t d, const Fan& f, const std::map<std::size_t, Integer>& weights);
  /// Every maximal cone of a pure fan with the same weight.
  static TropicalCycle uniform(const Fan& f, const Integer& w = 1);
  /// Arbitrary, possibly overlapping, weighted d-cones. Overlaps are resolved
  /// on the common arrangement refinement; weights add up pointwise.
  static TropicalCycle from_weighted_cones(std::size_t n, std::size_t d, const std::vector<WeightedCone>& cones);
  /// Same, for cones already known to lie in one common fan.
  static TropicalCycle from_compatible_cones(std::size_t n, std::size_t d, const std::vector<WeightedCone>& cones);

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return d_; }
  const Fan& fan() const { return fan_; }
  /// Weights keyed by maximal cone index of fan().
  const std::map<std::size_t, Integer>& weights() const { return weights_; }
  Integer weight(const Cone& c) const;
  bool is_zero() const { return weights_.empty(); }
  std::vector<WeightedCone> weighted_cones() const;

  bool operator==(const TropicalCycle& o) const {
    return n_ == o.n_ && d_ == o.d_ && fan_ == o.fan_ && weights_ == o.weights_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  Fan fan_;
  std::map<std::size_t, Integer> weights_;
};

struct BalancingViolation {
  std::size_t tau = 0;  // cone index in the cycle's fan
  Cone tau_cone;
  LatticeVector defect;  // sum of weighted normal vectors, not in span(tau)
};

/// Checks the balancing condition at every codimension-one cone.
std::optional<BalancingViolation> check_balancing(const TropicalCycle& c);

TropicalCycle cycle_add(const TropicalCycle& a, const TropicalCycle& b);
TropicalCycle cycle_scale(const Integer& k, const TropicalCycle& a);
TropicalCycle cycle_sub(const TropicalCycle& a, const TropicalCycle& b);
bool equals_mod_refinement(const TropicalCycle& a, const TropicalCycle& b);

/// Weight of the origin of a zero-dimensional cycle.
Integer degree0(const TropicalCycle& c);

/// Integer linear map Z^cols -> Z^rows, optionally followed by a translation.
struct MorphismZ {
  IntegerMatrix matrix;
  std::optional<RationalVector> translation;

  std::size_t source_dim() const { return matrix.cols(); }
  std::size_t target_dim() const { return matrix.rows(); }
  /// The projection Z^n -> Z^(n-1) forgetting coordinate i.
  static MorphismZ forget(std::size_t n, std::size_t i);
  /// Projection forgetting every coordinate in the sorted list.
  static MorphismZ forget(std::size_t n, const std::vector<std::size_t>& drop);
};

TropicalCycle push_forward(const MorphismZ& pi, const TropicalCycle& c);

/// Star of the cycle around one of its cones; tau's span becomes lineality.
TropicalCycle star_cycle(const TropicalCycle& c, const Cone& tau);

/// Weights transferred to a fan g refining the cycle's support: each d-cone
/// of g inside the support gets the weight of the cycle cone containing it.
TropicalCycle refine_cycle(const TropicalCycle& c, const Fan& g);

/// The lineality space of the fan as a cycle of its own dimension.
TropicalCycle lineality_cycle(std::size_t n, const std::vector<LatticeVector>& lineality, const Integer& w);

}  // namespace trop
