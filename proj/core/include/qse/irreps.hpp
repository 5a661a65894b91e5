#pragma once

#include <string>
#include <vector>

#include "qse/representation.hpp"

namespace qse {

struct Irrep {
  std::string label;
  int dim = 0;
  std::vector<Matrix> matrices;
  Vector character;  // trace of each matrix
};

/// A set of inequivalent irreducible representations sharing one multiplier.
/// Complete when the squared dimensions sum to the group order.
struct IrrepCatalog {
  GroupTable group;
  Multiplier multiplier;
  std::vector<Irrep> irreps;

  int dimension_sum_squares() const {
    int s = 0;
    for (const auto& ir : irreps) s += ir.dim * ir.dim;
    return s;
  }
  bool complete() const { return dimension_sum_squares() == group.order; }
};

Irrep make_irrep(std::string label, std::vector<Matrix> matrices);

/// Catalogs shipped for: cyclic groups (any generator labelling), the Klein
/// four-group with trivial multiplier, Klein four with a normalized nontrivial
/// multiplier (Pauli-style 2-dim irrep), and dihedral tables laid out as
/// build_dihedral produces them. Anything else throws an unsupported-catalog
/// error; decompose_representation accepts user-supplied catalogs instead.
IrrepCatalog builtin_irreps(const GroupTable& g, const Multiplier& m);

/// Max deviation from sum_g (U^mu_g)_{nm} conj((U^nu_g)_{n'm'})
/// = delta_{mu,nu} delta_{n,n'} delta_{m,m'} |G| / d_mu over all index tuples.
double great_orthogonality_check(const IrrepCatalog& catalog);

}  // namespace qse
