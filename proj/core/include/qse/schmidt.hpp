#pragma once

#include <utility>
#include <vector>

#include "qse/decomposition.hpp"
#include "qse/gram.hpp"

namespace qse {

/// Schmidt data of one isotypic block of the seed state: coefficients
/// alpha_k (descending) with bases |v_k> in the irrep factor and |u_k> in
/// the multiplicity factor. Coefficients below the zero cutoff are snapped
/// to exact zeros; v columns are only kept for the positive ones.
struct SchmidtBlock {
  int irrep_index = 0;
  int dim = 0;
  int multiplicity = 0;
  int offset = 0;
  RealVector alphas;  // length min(dim, multiplicity)
  Matrix v_basis;     // dim x positive_count
  Matrix u_basis;     // multiplicity x min(dim, multiplicity)
  int positive_count = 0;

  int coord(int n, int t) const { return offset + n * multiplicity + t; }
};

struct SchmidtData {
  int group_order = 0;
  Vector seed_rotated;  // basis * seed
  std::vector<SchmidtBlock> blocks;
  // Eigenvalue multiset of the ensemble operator: each alpha_k of a block
  // contributes dim copies. Sorted descending.
  std::vector<double> flat_eigenvalues;
};

struct EnsembleOperator {
  Matrix omega;  // sum_g U_g |psi><psi| U_g^dag in the original basis
  SchmidtData schmidt;
};

/// Assembles the ensemble operator, verifies it is block diagonal in the
/// isotypic basis, and extracts per-block Schmidt data from the rotated seed.
EnsembleOperator ensemble_operator(const Ensemble& e,
                                   const IsotypicDecomposition& dec);

/// (block index, k) of the largest Schmidt coefficient; ties resolved by
/// block order then k.
std::pair<int, int> dominant_component(const SchmidtData& s);

/// Rotated-space vector |v_k> (x) |u_k> embedded at the block's coordinates.
Vector block_product_vector(const SchmidtData& s, int block_index, int k,
                            int dim_full);

/// Projector onto the span of the ensemble (support of the ensemble
/// operator) in the original basis.
Matrix span_projector(const SchmidtData& s, const IsotypicDecomposition& dec);

}  // namespace qse
