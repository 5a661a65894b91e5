#include "qse/schmidt.hpp"

#include <algorithm>
#include <cmath>

namespace qse {

EnsembleOperator ensemble_operator(const Ensemble& e,
                                   const IsotypicDecomposition& dec) {
  if (dec.rep.dim != e.dim() || dec.rep.group.order != e.order())
    throw std::invalid_argument(
        "ensemble_operator: decomposition does not match the ensemble");

  EnsembleOperator result;
  result.omega = Matrix::Zero(e.dim(), e.dim());
  for (const Vector& state : e.states)
    result.omega += state * state.adjoint();

  // The operator commutes with the representation, so it must be block
  // diagonal (scalar on each irrep factor) in the isotypic basis.
  Matrix rotated = dec.basis * result.omega * dec.basis.adjoint();
  const double scale = std::max(1.0, max_abs(result.omega));
  {
    Matrix leak = rotated;
    for (const auto& block : dec.blocks)
      leak.block(block.offset, block.offset, block.span(), block.span())
          .setZero();
    if (max_abs(leak) > 1e-8 * scale)
      throw Error(ErrorClass::internal,
                  "ensemble operator leaks outside the isotypic blocks");
  }

  SchmidtData& s = result.schmidt;
  s.group_order = e.order();
  s.seed_rotated = dec.basis * e.seed;

  double alpha_max = 0.0;
  for (const auto& block : dec.blocks) {
    // Coordinates of the seed inside the block, as a dim x multiplicity
    // matrix; alpha_k are |G|/d times its squared singular values.
    Matrix coords(block.dim, block.multiplicity);
    for (int n = 0; n < block.dim; ++n)
      for (int t = 0; t < block.multiplicity; ++t)
        coords(n, t) = s.seed_rotated(block.coord(n, t));
    coords *= std::sqrt(static_cast<double>(s.group_order) / block.dim);

    const int r = std::min(block.dim, block.multiplicity);
    HermitianSpectrum h = hermitian_eig(Matrix(coords.adjoint() * coords));

    SchmidtBlock sb;
    sb.irrep_index = block.irrep_index;
    sb.dim = block.dim;
    sb.multiplicity = block.multiplicity;
    sb.offset = block.offset;
    sb.alphas.resize(r);
    sb.u_basis.resize(block.multiplicity, r);
    for (int k = 0; k < r; ++k) {
      sb.alphas(k) = std::max(0.0, h.eigenvalues(k));
      sb.u_basis.col(k) = h.eigenvectors.col(k).conjugate();
      alpha_max = std::max(alpha_max, sb.alphas(k));
    }
    s.blocks.push_back(std::move(sb));
  }

  const double cutoff = tol::zero_alpha * std::max(1.0, alpha_max);
  for (auto& sb : s.blocks) {
    Matrix coords(sb.dim, sb.multiplicity);
    for (int n = 0; n < sb.dim; ++n)
      for (int t = 0; t < sb.multiplicity; ++t)
        coords(n, t) = s.seed_rotated(sb.coord(n, t));
    coords *= std::sqrt(static_cast<double>(s.group_order) / sb.dim);

    sb.positive_count = 0;
    for (int k = 0; k < sb.alphas.size(); ++k) {
      if (sb.alphas(k) <= cutoff) {
        sb.alphas(k) = 0.0;
        continue;
      }
      ++sb.positive_count;
    }
    sb.v_basis.resize(sb.dim, sb.positive_count);
    for (int k = 0; k < sb.positive_count; ++k) {
      Vector v = coords * sb.u_basis.col(k).conjugate();
      sb.v_basis.col(k) = v / v.norm();
    }
    for (int k = 0; k < sb.alphas.size(); ++k)
      for (int copy = 0; copy < sb.dim; ++copy)
        s.flat_eigenvalues.push_back(sb.alphas(k));
  }
  std::sort(s.flat_eigenvalues.begin(), s.flat_eigenvalues.end(),
            std::greater<>());
  return result;
}

std::pair<int, int> dominant_component(const SchmidtData& s) {
  int best_block = -1, best_k = -1;
  double best = -1.0;
  for (size_t b = 0; b < s.blocks.size(); ++b)
    for (int k = 0; k < s.blocks[b].alphas.size(); ++k)
      if (s.blocks[b].alphas(k) > best) {
        best = s.blocks[b].alphas(k);
        best_block = static_cast<int>(b);
        best_k = k;
      }
  if (best_block < 0)
    throw Error(ErrorClass::internal, "empty Schmidt data");
  return {best_block, best_k};
}

Vector block_product_vector(const SchmidtData& s, int block_index, int k,
                            int dim_full) {
  const SchmidtBlock& b = s.blocks[block_index];
  if (k >= b.positive_count)
    throw std::invalid_argument(
        "block_product_vector: no Schmidt vector for a zero coefficient");
  Vector out = Vector::Zero(dim_full);
  for (int n = 0; n < b.dim; ++n)
    for (int t = 0; t < b.multiplicity; ++t)
      out(b.coord(n, t)) = b.v_basis(n, k) * b.u_basis(t, k);
  return out;
}

Matrix span_projector(const SchmidtData& s, const IsotypicDecomposition& dec) {
  const int dim = dec.dim();
  Matrix rotated = Matrix::Zero(dim, dim);
  for (const auto& b : s.blocks) {
    Matrix u_proj = Matrix::Zero(b.multiplicity, b.multiplicity);
    for (int k = 0; k < b.positive_count; ++k)
      u_proj += b.u_basis.col(k) * b.u_basis.col(k).adjoint();
    for (int n = 0; n < b.dim; ++n)
      for (int t = 0; t < b.multiplicity; ++t)
        for (int tp = 0; tp < b.multiplicity; ++tp)
          rotated(b.coord(n, t), b.coord(n, tp)) = u_proj(t, tp);
  }
  return dec.basis.adjoint() * rotated * dec.basis;
}

}  // namespace qse
