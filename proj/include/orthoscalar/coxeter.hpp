#pragma once

#include <vector>

#include "orthoscalar/representation.hpp"
#include "orthoscalar/roots.hpp"

namespace orthoscalar {

struct OrientedRepresentation {
  Representation representation;
  std::vector<bool> flipped;  // per arrow: reversed relative to the input
};

/// Orients every arrow from its odd endpoint to its even endpoint. Flipped
/// arrows carry the adjoint matrix, which leaves every vertex operator unchanged.
OrientedRepresentation normalize_orientation(const Representation& rep);

/// Orients every arrow so that its head has the given parity.
OrientedRepresentation orient_into(const Representation& rep, Parity heads);

/// Re-orients `rep` to match `target` (same vertices and arrow ids).
Representation orient_like(const Representation& rep, const Quiver& target);

struct FunctorResult {
  Representation representation;
  Character character;
};

/// Simultaneous Hilbert-space reflection at every vertex of `parity`.
///
/// Arrows are first oriented into the reflected vertices. At a reflected
/// vertex g with incoming block row R_g = [S(beta)], the new space is ker R_g
/// (orthonormal basis from the SVD), and each reversed arrow g -> h carries
/// sqrt(scale * chi(g)) times the h-block of the kernel inclusion. Since
/// R_g R_g^* = chi(g) 1, the projection onto the kernel is 1 - R_g^* R_g / chi(g),
/// which makes the output orthoscalar for
/// chi'(g) = scale chi(g) and chi'(h) = scale (sum_{g ~ h} chi(g) - chi(h)).
/// Output arrows point away from the reflected vertices.
///
/// Errors: NotOrthoscalar, NegativeReflectedDim, ZeroCharacterAtReflectedVertex,
/// NegativeOutputCharacter.
FunctorResult coxeter_functor(const Representation& rep, const Character& chi, Parity parity,
                              double scale = 1.0, double input_tol = 1e-6);

struct Construction {
  Representation representation;
  Index start_vertex;
  std::vector<Parity> chain;  // parities applied in order to the simple at start_vertex
};

/// Builds an orthoscalar representation of dimension `d` (a real root) for
/// the character `chi` by pushing a simple representation through
/// alternating-parity Coxeter functors. Chains are tried shortest first,
/// then by parity sequence (even before odd), then by start vertex.
///
/// Errors: NotRoot, Infeasible (balance), NoChainFound, CharacterObstruction.
Construction construct_via_functors(const Quiver& q, const DimVector& d, const Character& chi, int depth_limit = 12);

}  // namespace orthoscalar
