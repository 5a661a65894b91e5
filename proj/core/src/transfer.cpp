#include "qse/transfer.hpp"

namespace qse {

Matrix state_map(const Ensemble& e) {
  Matrix x(e.dim(), e.order());
  for (int g = 0; g < e.order(); ++g) x.col(g) = e.states[g];
  return x;
}

std::vector<Matrix> transfer_povm(const Matrix& x,
                                  const std::vector<Matrix>& ops,
                                  TransferDirection direction) {
  if (ops.empty()) throw std::invalid_argument("transfer_povm: empty POVM");
  Matrix total = Matrix::Zero(ops[0].rows(), ops[0].cols());
  for (const Matrix& op : ops) {
    if (!is_psd(op, tol::psd).psd)
      throw std::invalid_argument("transfer_povm: POVM element is not PSD");
    total += op;
  }

  Matrix map;  // Pi -> map^dag Pi map
  if (direction == TransferDirection::to_gram_space) {
    // Completeness on span(ensemble) = range(X).
    const Matrix proj = x * pinv(x);
    if (!is_psd(Matrix(proj - proj * total * proj), 1e-7).psd)
      throw std::invalid_argument(
          "transfer_povm: POVM exceeds the identity on the ensemble span");
    map = x;
  } else {
    const Matrix g = x.adjoint() * x;
    if (!is_psd(Matrix(g - total), 1e-7).psd)
      throw std::invalid_argument(
          "transfer_povm: operators exceed the Gram matrix");
    map = pinv(x);
  }

  std::vector<Matrix> out;
  out.reserve(ops.size());
  for (const Matrix& op : ops) out.push_back(map.adjoint() * op * map);
  return out;
}

Eigen::MatrixXd joint_probabilities(const Ensemble& e,
                                    const std::vector<Matrix>& povm) {
  Eigen::MatrixXd p(e.order(), povm.size());
  for (int k = 0; k < e.order(); ++k)
    for (size_t l = 0; l < povm.size(); ++l) {
      const cdouble value = e.states[k].dot(povm[l] * e.states[k]);
      p(k, static_cast<Eigen::Index>(l)) = value.real() / e.order();
    }
  return p;
}

}  // namespace qse
