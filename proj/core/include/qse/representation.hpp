#pragma once

#include <vector>

#include "qse/multiplier.hpp"
#include "qse/types.hpp"

namespace qse {

/// A unitary (possibly projective) representation: one matrix per group
/// element, composing as U_g U_h = omega(g,h) U_{gh}.
struct UnitaryRep {
  GroupTable group;
  Multiplier multiplier;
  int dim = 0;
  std::vector<Matrix> matrices;

  const Matrix& at(int g) const { return matrices[g]; }
};

/// Basic shape checks only; use verify_representation for the axioms.
UnitaryRep make_rep(GroupTable group, Multiplier multiplier,
                    std::vector<Matrix> matrices);

/// Left translation on the group algebra: (L_g)_{r,c} = omega(g,c) when
/// g = r c^-1, zero elsewhere. Requires a normalized multiplier.
UnitaryRep left_regular(const GroupTable& g, const Multiplier& m);

/// Right translation: (R_g)_{r,c} = omega(g, c^-1) when g = r^-1 c.
UnitaryRep right_regular(const GroupTable& g, const Multiplier& m);

struct RepValidation {
  double worst_unitarity = 0.0;     // max ||U^dag U - 1||_max
  double worst_homomorphism = 0.0;  // max ||U_g U_h - omega(g,h) U_{gh}||_max
  double identity_deviation = 0.0;  // ||U_e - 1||_max

  bool ok(double tolerance = tol::rep_law) const {
    return worst_unitarity <= tolerance && worst_homomorphism <= tolerance &&
           identity_deviation <= tol::unit;
  }
};

RepValidation verify_representation(const UnitaryRep& rep);

}  // namespace qse
