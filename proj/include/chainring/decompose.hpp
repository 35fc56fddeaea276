#pragma once

#include <optional>
#include <vector>

#include "chainring/chain_ring.hpp"
#include "chainring/field.hpp"
#include "chainring/ideal.hpp"
#include "chainring/quotient.hpp"

namespace chainring {

/// Dense polynomial over R^t, low degree first, trailing zeros trimmed.
using RtPoly = std::vector<RtElem>;

enum class SplitCase {
  /// n = 2, delta a square: two linear-in-x^{p^s} factors.
  square,
  /// n = 2, delta not a square: the modulus stays whole, base irreducible.
  non_square,
  /// n = 3, delta a cube, cube roots of unity in the field: three linear
  /// (in x^{p^s}) factors.
  cube_all_linear,
  /// n = 3, delta a cube, no cube roots of unity: one linear factor times
  /// one quadratic factor.
  cube_linear_quadratic,
  /// n = 3, delta not a cube: modulus whole, base irreducible.
  non_cube,
};

/// Factorization of the modulus of R^t[x]/<x^{n p^s} - delta> into coprime
/// monic pieces, with the component quotient rings and the Bezout
/// idempotents that realize the product decomposition.
struct SplitPlan {
  SplitCase kind = SplitCase::non_square;
  RingCtxPtr parent;
  /// n-th root of delta; present exactly when delta is an n-th power.
  std::optional<RtElem> root;
  /// cube_all_linear only: the two nontrivial cube roots of unity, in
  /// field-element order. The second and third factor constants are
  /// b * root and c * root.
  std::optional<Fq> b, c;
  /// Monic factors whose product is x^{n p^s} - delta; empty when whole.
  std::vector<RtPoly> factors;
  std::vector<RingCtxPtr> components;  // one ring per factor
  /// idempotents[i] acts as 1 on component i and 0 on the others; they are
  /// orthogonal and sum to 1 (verified at construction).
  std::vector<QuotElement> idempotents;

  bool splits() const { return !components.empty(); }
};

/// Decides how x^{n p^s} - delta factors and prepares the transport data.
/// Requires a constacyclic ring with n = 2 (p odd) or n = 3 (p != 3):
/// UnsupportedParameter otherwise.
SplitPlan plan_split(const RingCtxPtr& parent);

/// Reduction of a parent element modulo each factor. The plan must split
/// and a must live in the parent ring: InvalidInput otherwise.
std::vector<QuotElement> crt_forward(const SplitPlan& plan, const QuotElement& a);

/// Inverse of crt_forward: sum of lifted parts weighted by the idempotents.
QuotElement crt_backward(const SplitPlan& plan, const std::vector<QuotElement>& parts);

/// Ideal of the parent ring corresponding to one ideal per component: each
/// component basis vector is pulled back with zeros in the other slots.
/// The component dimensions add up to the result's (verified).
Ideal ideal_product(const SplitPlan& plan, const std::vector<Ideal>& parts);

/// Image of a parent ideal in each component: the span of the projected
/// basis. ideal_product(component_ideals(I)) == I for every ideal I.
std::vector<Ideal> component_ideals(const SplitPlan& plan, const Ideal& I);

}  // namespace chainring
