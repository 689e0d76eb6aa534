#pragma once

// Rational polyhedral cones in canonical form.

#include <compare>
#include <string>
#include <vector>

#include "trop/exact.hpp"

namespace trop {

/// A rational polyhedral cone {sum l_i r_i + sum m_j b_j : l_i >= 0} with its
/// inequality description.
///
/// Canonical form: lineality in Hermite normal form; rays reduced modulo the
/// lineality lattice, primitive, sorted; facets and equations likewise reduced
/// modulo the equation lattice. Two cones are equal as sets iff they compare
/// equal.
class Cone {
 public:
  Cone() = default;

  static Cone from_rays(std::size_t n, const std::vector<LatticeVector>& rays,
                        const std::vector<LatticeVector>& lineality = {});
  /// {x : a.x >= 0 for a in inequalities, e.x = 0 for e in equations}.
  static Cone from_inequalities(std::size_t n, const std::vector<LinearForm>& inequalities,
                                const std::vector<LinearForm>& equations = {});

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return dim_; }
  std::size_t lineality_dim() const { return lineality_.size(); }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  const std::vector<LatticeVector>& lineality() const { return lineality_; }
  /// Inward facet normals: x in cone implies f.x >= 0.
  const std::vector<LinearForm>& facets() const { return facets_; }
  /// Saturated basis of the forms vanishing on the span.
  const std::vector<LinearForm>& equations() const { return equations_; }

  bool is_pointed() const { return lineality_.empty(); }
  bool is_simplicial() const { return rays_.size() + lineality_.size() == dim_; }
  /// Index of the lattice generated by rays and lineality basis in Λ_σ.
  Integer multiplicity() const;
  bool is_unimodular() const { return is_simplicial() && multiplicity() == 1; }

  bool contains(const LatticeVector& x) const;
  bool contains(const RationalVector& x) const;
  bool contains(const Cone& other) const;
  bool in_relative_interior(const LatticeVector& x) const;
  bool in_relative_interior(const RationalVector& x) const;

  /// Sum of the rays (zero for a linear space); lies in the relative interior.
  LatticeVector interior_point() const;
  RationalVector relative_interior_point() const;

  /// Saturated lattice basis of Λ_σ = span ∩ Z^n (Hermite normal form).
  std::vector<LatticeVector> lattice_basis() const;

  /// Ray index sets (into rays()) of all faces, including the full set and
  /// the empty set of the minimal face.
  std::vector<std::vector<std::size_t>> face_ray_sets() const;
  /// All faces, including this cone and the minimal face, sorted.
  std::vector<Cone> faces() const;
  /// Faces of codimension one.
  std::vector<Cone> facet_cones() const;
  bool is_face_of(const Cone& big) const;

  /// Indices of rays lying on the face cut out by the given form (f >= 0 on
  /// the cone is required).
  std::vector<std::size_t> rays_on(const LinearForm& f) const;

  std::strong_ordering operator<=>(const Cone& o) const;
  bool operator==(const Cone& o) const;

  std::string to_string() const;

 private:
  static Cone build(std::size_t n, std::vector<LatticeVector> lineality, std::vector<LatticeVector> rays,
                    std::vector<LinearForm> equations, std::vector<LinearForm> facets);

  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<LatticeVector> rays_;
  std::vector<LatticeVector> lineality_;
  std::vector<LinearForm> facets_;
  std::vector<LinearForm> equations_;
};

Cone intersect(const Cone& a, const Cone& b);

/// Lexicographic comparison of integer vectors (mpz aware).
bool vec_less(const LatticeVector& a, const LatticeVector& b);

/// Result of one double description run: a lineality basis and the extreme
/// rays (modulo lineality) of {x : a.x >= 0, e.x = 0}.
struct GeneratorPair {
  std::vector<LatticeVector> lineality;
  std::vector<LatticeVector> rays;
};
GeneratorPair double_description(std::size_t n, const std::vector<LinearForm>& inequalities,
                                 const std::vector<LinearForm>& equations);

}  // namespace trop
