#pragma once

#include "qse/irreps.hpp"
#include "qse/linalg.hpp"

namespace qse {

struct IsotypicBlock {
  int irrep_index = 0;
  int dim = 0;           // d_mu
  int multiplicity = 0;  // m_mu
  int offset = 0;        // start in rotated coordinates

  /// Rotated coordinate of irrep row n, multiplicity slot t.
  int coord(int n, int t) const { return offset + n * multiplicity + t; }
  int span() const { return dim * multiplicity; }
};

/// Change of basis splitting a representation into isotypic blocks:
/// basis * U_g * basis^dag = direct sum over mu of U^mu_g (x) 1_{m_mu}.
struct IsotypicDecomposition {
  UnitaryRep rep;
  IrrepCatalog catalog;
  Matrix basis;  // unitary, rows are the new basis vectors
  std::vector<IsotypicBlock> blocks;

  int dim() const { return rep.dim; }
};

/// Splits an arbitrary representation with the catalog's matrix-element
/// projectors. Blocks with zero multiplicity are dropped. Throws when the
/// catalog does not account for the full dimension.
IsotypicDecomposition decompose_representation(const UnitaryRep& rep,
                                               const IrrepCatalog& catalog);

/// Decomposition of the left-regular representation; requires a complete
/// catalog (squared dimensions summing to |G|) and yields m_mu = d_mu.
IsotypicDecomposition decompose_regular(const GroupTable& g,
                                        const Multiplier& m,
                                        const IrrepCatalog& catalog);

/// Worst deviation of basis * U_g * basis^dag from the block structure,
/// including off-block leakage and in-block mismatch with U^mu_g (x) 1.
double block_diagonal_deviation(const IsotypicDecomposition& d);

}  // namespace qse
