#include "qse/decomposition.hpp"

#include <cmath>

namespace qse {

namespace {

// (d_mu/|G|) sum_g conj((U^mu_g)_{n,m}) U_g projects onto the n-th irrep row
// of the mu-isotypic component and shifts row m to row n.
Matrix element_projector(const UnitaryRep& rep, const Irrep& irrep, int n,
                         int m) {
  Matrix p = Matrix::Zero(rep.dim, rep.dim);
  for (int g = 0; g < rep.group.order; ++g)
    p += std::conj(irrep.matrices[g](n, m)) * rep.at(g);
  return p * (static_cast<double>(irrep.dim) / rep.group.order);
}

}  // namespace

IsotypicDecomposition decompose_representation(const UnitaryRep& rep,
                                               const IrrepCatalog& catalog) {
  if (catalog.group.order != rep.group.order)
    throw std::invalid_argument("decompose_representation: group mismatch");

  IsotypicDecomposition dec;
  dec.rep = rep;
  dec.catalog = catalog;

  Matrix columns(rep.dim, rep.dim);
  int filled = 0;
  for (size_t mu = 0; mu < catalog.irreps.size(); ++mu) {
    const Irrep& irrep = catalog.irreps[mu];
    const Matrix p11 = element_projector(rep, irrep, 0, 0);
    HermitianSpectrum spec = hermitian_eig(p11);
    int multiplicity = 0;
    for (int i = 0; i < spec.dim; ++i) {
      const double lambda = spec.eigenvalues(i);
      if (lambda > 0.5) {
        if (std::abs(lambda - 1.0) > 1e-8)
          throw Error(ErrorClass::internal,
                      "isotypic projector eigenvalue is not 0/1; irreps may "
                      "be inconsistent with the representation");
        ++multiplicity;
      }
    }
    if (multiplicity == 0) continue;
    if (filled + irrep.dim * multiplicity > rep.dim)
      throw Error(ErrorClass::unsupported,
                  "catalog overcounts the representation dimension");

    IsotypicBlock block;
    block.irrep_index = static_cast<int>(mu);
    block.dim = irrep.dim;
    block.multiplicity = multiplicity;
    block.offset = filled;

    const Matrix row0 = spec.eigenvectors.leftCols(multiplicity);
    for (int n = 0; n < irrep.dim; ++n) {
      const Matrix pn1 = element_projector(rep, irrep, n, 0);
      for (int t = 0; t < multiplicity; ++t) {
        Vector v = pn1 * row0.col(t);
        const double norm = v.norm();
        if (std::abs(norm - 1.0) > 1e-6)
          throw Error(ErrorClass::internal,
                      "isotypic basis vector lost norm during projection");
        columns.col(block.coord(n, t)) = v / norm;
      }
    }
    dec.blocks.push_back(block);
    filled += block.span();
  }

  if (filled != rep.dim)
    throw Error(ErrorClass::unsupported,
                "catalog does not account for the full representation "
                "dimension (" +
                    std::to_string(filled) + " of " +
                    std::to_string(rep.dim) + ")");

  if (max_abs(Matrix(columns.adjoint() * columns -
                     Matrix::Identity(rep.dim, rep.dim))) > 1e-8)
    throw Error(ErrorClass::internal, "isotypic basis is not orthonormal");

  dec.basis = columns.adjoint();
  return dec;
}

IsotypicDecomposition decompose_regular(const GroupTable& g,
                                        const Multiplier& m,
                                        const IrrepCatalog& catalog) {
  if (!catalog.complete())
    throw Error(ErrorClass::unsupported,
                "incomplete irrep catalog: squared dimensions sum to " +
                    std::to_string(catalog.dimension_sum_squares()) +
                    ", group order is " + std::to_string(g.order));
  IsotypicDecomposition dec =
      decompose_representation(left_regular(g, m), catalog);
  for (const auto& block : dec.blocks)
    if (block.multiplicity != block.dim)
      throw Error(ErrorClass::internal,
                  "regular representation multiplicity != irrep dimension");
  return dec;
}

double block_diagonal_deviation(const IsotypicDecomposition& d) {
  double worst = 0.0;
  for (int g = 0; g < d.rep.group.order; ++g) {
    Matrix rotated = d.basis * d.rep.at(g) * d.basis.adjoint();
    for (const auto& block : d.blocks) {
      const Irrep& irrep = d.catalog.irreps[block.irrep_index];
      for (int n = 0; n < block.dim; ++n)
        for (int t = 0; t < block.multiplicity; ++t)
          for (int np = 0; np < block.dim; ++np)
            for (int tp = 0; tp < block.multiplicity; ++tp) {
              const cdouble expect =
                  (t == tp) ? irrep.matrices[g](n, np) : cdouble(0.0);
              cdouble& cell = rotated(block.coord(n, t), block.coord(np, tp));
              worst = std::max(worst, std::abs(cell - expect));
              cell = 0.0;
            }
    }
    worst = std::max(worst, max_abs(rotated));  // off-block leakage
  }
  return worst;
}

}  // namespace qse
