#include "qse/representation.hpp"

#include <algorithm>

namespace qse {

UnitaryRep make_rep(GroupTable group, Multiplier multiplier,
                    std::vector<Matrix> matrices) {
  if (static_cast<int>(matrices.size()) != group.order)
    throw std::invalid_argument("make_rep: one matrix per group element");
  if (multiplier.order() != group.order)
    throw std::invalid_argument("make_rep: multiplier size mismatch");
  if (matrices.empty() || matrices[0].rows() == 0)
    throw std::invalid_argument("make_rep: empty representation");
  const Eigen::Index d = matrices[0].rows();
  for (const Matrix& u : matrices)
    if (u.rows() != d || u.cols() != d)
      throw std::invalid_argument("make_rep: inconsistent matrix dimensions");
  UnitaryRep rep;
  rep.group = std::move(group);
  rep.multiplier = std::move(multiplier);
  rep.dim = static_cast<int>(d);
  rep.matrices = std::move(matrices);
  return rep;
}

UnitaryRep left_regular(const GroupTable& g, const Multiplier& m) {
  if (!is_normalized(g, m))
    throw std::invalid_argument(
        "left_regular: multiplier must satisfy omega(g,g^-1) = 1; "
        "call normalize_multiplier first");
  const int n = g.order;
  std::vector<Matrix> mats(n, Matrix::Zero(n, n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const int elem = g.mul(r, g.inv(c));
      mats[elem](r, c) = m.omega(elem, c);
    }
  return make_rep(g, m, std::move(mats));
}

UnitaryRep right_regular(const GroupTable& g, const Multiplier& m) {
  if (!is_normalized(g, m))
    throw std::invalid_argument(
        "right_regular: multiplier must satisfy omega(g,g^-1) = 1; "
        "call normalize_multiplier first");
  const int n = g.order;
  std::vector<Matrix> mats(n, Matrix::Zero(n, n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const int elem = g.mul(g.inv(r), c);
      mats[elem](r, c) = m.omega(elem, g.inv(c));
    }
  return make_rep(g, m, std::move(mats));
}

RepValidation verify_representation(const UnitaryRep& rep) {
  RepValidation v;
  const int n = rep.group.order;
  const Matrix eye = Matrix::Identity(rep.dim, rep.dim);
  for (int a = 0; a < n; ++a) {
    v.worst_unitarity = std::max(
        v.worst_unitarity, max_abs(Matrix(rep.at(a).adjoint() * rep.at(a) - eye)));
    for (int b = 0; b < n; ++b) {
      const Matrix defect = rep.at(a) * rep.at(b) -
                            rep.multiplier.omega(a, b) * rep.at(rep.group.mul(a, b));
      v.worst_homomorphism = std::max(v.worst_homomorphism, max_abs(defect));
    }
  }
  v.identity_deviation = max_abs(Matrix(rep.at(rep.group.identity) - eye));
  return v;
}

}  // namespace qse
