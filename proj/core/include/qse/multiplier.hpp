#pragma once

#include <string>

#include "qse/group.hpp"
#include "qse/types.hpp"

namespace qse {

/// A 2-cocycle of unit-modulus phases attached to a group table. Projective
/// representations compose as U_g U_h = omega(g,h) U_{gh}.
struct Multiplier {
  Matrix phases;  // |G| x |G|
  bool trivial = true;

  int order() const { return static_cast<int>(phases.rows()); }
  cdouble omega(int g, int h) const { return phases(g, h); }
};

struct MultiplierValidation {
  GroupCheck unit_modulus;
  GroupCheck cocycle;
  GroupCheck identity_normalization;  // omega(g,e) = omega(e,g) = 1
  GroupCheck inverse_normalization;   // omega(g,g^-1) = 1

  bool ok() const {
    return unit_modulus.ok && cocycle.ok && identity_normalization.ok;
  }
  std::string summary() const;
};

Multiplier trivial_multiplier(int order);

/// The multiplier of the Pauli matrices {1,sx,sy,sz} viewed as a projective
/// representation of the Klein four-group: sx*sy = i*sz and cyclic relatives.
Multiplier pauli_multiplier();

/// Wraps an explicit phase table; checks unit modulus and identity
/// normalization. The cocycle condition is reported by validate_multiplier.
Multiplier multiplier_from_phases(Matrix phases);

MultiplierValidation validate_multiplier(const GroupTable& g,
                                         const Multiplier& m);

/// True when omega(g, g^-1) = 1 for every g.
bool is_normalized(const GroupTable& g, const Multiplier& m,
                   double tolerance = tol::unit);

/// Rescales to the equivalent multiplier with omega(g,g^-1) = 1, using
/// mu(g) = 1/sqrt(omega(g,g^-1)) with the branch arg in [-pi,pi), so that
/// sqrt(-1) = -i. Maps the quaternion-style multiplier of {1,-i*s_j} onto
/// pauli_multiplier(). Idempotent.
Multiplier normalize_multiplier(const GroupTable& g, const Multiplier& m);

}  // namespace qse
