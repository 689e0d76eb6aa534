#pragma once

// Matroids given by their bases, Bergman fans and cutting subcycles of
// matroid varieties.

#include <cstdint>
#include <optional>
#include <vector>

#include "trop/pwpoly.hpp"

namespace trop {

/// Subsets of the ground set {0..n-1} as bit masks; n <= 16.
using ElementSet = std::uint32_t;

class Matroid {
 public:
  Matroid() = default;
  /// Validates equicardinality and basis exchange.
  static Matroid from_bases(std::size_t n, std::vector<ElementSet> bases);
  static Matroid free(std::size_t n);
  static Matroid uniform(std::size_t r, std::size_t n);

  std::size_t ground_size() const { return n_; }
  const std::vector<ElementSet>& bases() const { return bases_; }
  ElementSet ground() const { return n_ == 0 ? 0 : (ElementSet(1) << n_) - 1; }

  std::size_t rank() const { return rank_; }
  std::size_t rank(ElementSet s) const;
  ElementSet closure(ElementSet s) const;
  bool is_flat(ElementSet s) const { return closure(s) == s; }
  /// All flats, by increasing rank and then by mask.
  std::vector<ElementSet> flats() const;
  /// Flats of rank one.
  std::vector<ElementSet> atoms() const;
  ElementSet loops() const;
  ElementSet coloops() const;
  bool is_loopfree() const { return loops() == 0; }
  bool is_free() const { return rank_ == n_; }
  /// No loops and no parallel elements.
  bool is_simple() const;

  bool operator==(const Matroid& o) const { return n_ == o.n_ && bases_ == o.bases_; }

 private:
  std::size_t n_ = 0;
  std::size_t rank_ = 0;
  std::vector<ElementSet> bases_;  // sorted
};

/// M \ i, with the elements after i shifted down by one.
Matroid deletion(const Matroid& m, std::size_t i);
/// Deletes every element of r.
Matroid delete_set(const Matroid& m, ElementSet r);

/// V_F = -(sum of e_i over F).
LatticeVector flat_vector(std::size_t n, ElementSet f);

/// trop(M): cones over chains of flats with lineality R·V_E, all weights 1.
TropicalCycle bergman_fan(const Matroid& m);

/// The flat F and shift t with x = V_F + t·(1,...,1), if x has this shape.
std::optional<std::pair<ElementSet, Integer>> as_flat_vector(const LatticeVector& x);

/// φ_1..φ_k with φ_i(V_F) = -1 if rank_M(F) - rank_N(F) >= i and 0 otherwise,
/// linear on the cones of trop(M).
std::vector<RationalFanFunction> rank_cut_functions(const Matroid& m, const Matroid& n);

struct CutReport {
  TropicalCycle residual;  // C_p of the outermost call
  TropicalCycle product;   // f·trop(M), checked against C
  std::size_t calls = 0;   // recursive invocations, including base cases
  std::size_t base_cases = 0;
};

/// A piecewise polynomial f on a complete fan with f·trop(M) = C. The
/// product is checked before returning.
PiecewisePolynomial cut_subcycle(const Matroid& m, const TropicalCycle& c, CutReport* report = nullptr);

struct Codim1Certificate {
  TropicalCycle divisor;
  bool divisor_zero = false;
  /// Flats violating φ(V_F) = Σ φ(V_A) over the atoms A inside F.
  std::vector<ElementSet> failures;
  /// A global form agreeing with φ on every V_F, when the identity holds.
  std::optional<LinearForm> witness;
};

Codim1Certificate verify_codim1_duality(const Matroid& m, const RationalFanFunction& phi);

/// Ψ_σ·X, checked to be ω(σ) times the lineality space of X.
TropicalCycle psi_sigma_check(const TropicalCycle& x, const Cone& sigma);

/// l with ω(σ2)Ψ_σ1 - ω(σ1)Ψ_σ2 = l·Ψ_τ on X, where τ is the common facet.
LinearForm linear_relation(const TropicalCycle& x, const Cone& sigma1, const Cone& sigma2, const Cone& tau);

}  // namespace trop
