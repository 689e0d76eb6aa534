#pragma once

// Rational polyhedral fans with a common lineality space.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trop/cone.hpp"

namespace trop {

/// A failed fan axiom. `first`/`second` index the offending cones in the
/// checked fan's cone list (second is unset for single-cone violations).
struct FanViolation {
  std::string kind;
  std::size_t first = 0;
  std::optional<std::size_t> second;
  std::string message;
};

/// Set of cones sorted by (dim, canonical key). Cone indices are positions in
/// that order; maximal cones are listed separately in the same order.
class Fan {
 public:
  Fan() = default;
  /// The fan with no cones at all.
  explicit Fan(std::size_t n) : n_(n) {}

  /// Closes the given cones under taking faces. Non-maximal inputs are
  /// allowed; duplicates are merged.
  static Fan from_maximal_cones(std::size_t n, const std::vector<Cone>& cones);
  /// Exactly the listed cones, no closure. Used to validate raw input.
  static Fan from_cone_list(std::size_t n, const std::vector<Cone>& cones);
  /// Cones given by index lists into `rays`, all sharing `lineality`.
  static Fan from_indexed(std::size_t n, const std::vector<LatticeVector>& rays,
                          const std::vector<LatticeVector>& lineality,
                          const std::vector<std::vector<std::size_t>>& cones, bool close = true);

  std::size_t ambient_dim() const { return n_; }
  bool empty() const { return cones_.empty(); }
  std::size_t size() const { return cones_.size(); }
  const std::vector<Cone>& cones() const { return cones_; }
  const Cone& cone(std::size_t i) const { return cones_.at(i); }
  /// Indices of maximal cones (cones that are faces of no other cone).
  const std::vector<std::size_t>& maximal() const { return maximal_; }
  std::vector<Cone> maximal_cones() const;
  /// Canonical rays (reduced modulo the lineality), sorted.
  const std::vector<LatticeVector>& rays() const { return rays_; }
  const std::vector<LatticeVector>& lineality() const { return lineality_; }
  /// Global ray indices of cone i.
  const std::vector<std::size_t>& ray_indices(std::size_t i) const { return ray_idx_.at(i); }
  /// Codimension-one faces of cone i that belong to the fan.
  const std::vector<std::size_t>& facets_of(std::size_t i) const { return facets_.at(i); }
  /// Cones having cone i as a codimension-one face.
  const std::vector<std::size_t>& cofacets_of(std::size_t i) const { return cofacets_.at(i); }

  std::optional<std::size_t> find(const Cone& c) const;
  std::optional<std::size_t> find_ray(const LatticeVector& r) const;
  std::size_t index_of(const Cone& c) const;
  std::vector<std::size_t> cones_of_dim(std::size_t d) const;
  /// Maximal cones containing cone i (i itself if maximal).
  std::vector<std::size_t> maximal_containing(std::size_t i) const;
  /// First maximal cone containing the point, if any.
  std::optional<std::size_t> maximal_containing_point(const RationalVector& x) const;
  /// Cone whose relative interior contains x, if any.
  std::optional<std::size_t> locate(const RationalVector& x) const;

  std::size_t dim() const;
  bool is_pure() const;
  bool is_complete() const;
  bool is_pointed() const { return lineality_.empty(); }
  bool is_simplicial() const;
  bool is_unimodular() const;

  /// Both fan axioms, checked exhaustively.
  std::optional<FanViolation> validate() const;

  bool operator==(const Fan& o) const { return n_ == o.n_ && cones_ == o.cones_; }

 private:
  void index();

  std::size_t n_ = 0;
  std::vector<Cone> cones_;
  std::vector<std::size_t> maximal_;
  std::vector<LatticeVector> rays_;
  std::vector<LatticeVector> lineality_;
  std::vector<std::vector<std::size_t>> ray_idx_;
  std::vector<std::vector<std::size_t>> facets_;
  std::vector<std::vector<std::size_t>> cofacets_;
  std::map<Cone, std::size_t> lookup_;
  bool lineality_consistent_ = true;
};

/// Lattice vector v in sigma whose class generates Λ_σ/Λ_τ positively.
LatticeVector normal_vector(const Cone& sigma, const Cone& tau);

/// Replaces every cone containing c by the joins of r with its faces not
/// containing c.
Fan stellar_subdivide(const Fan& f, const Cone& c, const LatticeVector& r);

/// Triangulates by pulling rays, then subdivides until every cone is
/// unimodular. Support is unchanged.
Fan unimodular_refinement(const Fan& f);

/// Simplicial refinement obtained by pulling every ray in order.
Fan triangulate(const Fan& f);

/// Complete fan of the 2^n coordinate orthants.
Fan orthant_fan(std::size_t n);

/// Fan of all pairwise intersections of cones of a and b.
Fan common_refinement(const Fan& a, const Fan& b);

/// Cones sigma + span(tau) for sigma containing tau.
Fan star_fan(const Fan& f, const Cone& tau);

/// Primitive linear form normalised so that its first nonzero entry is positive.
LinearForm normalize_hyperplane(const LinearForm& h);

/// Facet and equation hyperplanes of the cones, normalised and deduplicated.
std::vector<LinearForm> hyperplanes_of(const std::vector<Cone>& cones);

/// Cells of c cut out by the arrangement: full-dimensional pieces of c on
/// which every hyperplane has constant sign.
std::vector<Cone> split_by_hyperplanes(const Cone& c, const std::vector<LinearForm>& hyperplanes);

/// Refines every maximal cone of f by the hyperplanes of f plus `extra`.
/// The cells are closed faces of the arrangement, so the result is a fan.
Fan arrangement_refinement(const Fan& f, const std::vector<LinearForm>& extra);

}  // namespace trop
