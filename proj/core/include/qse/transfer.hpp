#pragma once

#include <vector>

#include "qse/gram.hpp"

namespace qse {

/// X = sum_g |psi_g><g|; satisfies X^dag X = G and Omega = X X^dag.
Matrix state_map(const Ensemble& e);

enum class TransferDirection {
  to_gram_space,    // Xi_k = X^dag Pi_k X
  from_gram_space,  // Pi_k = pinv(X)^dag Xi_k pinv(X)
};

/// Moves a POVM between the states' Hilbert space and the group-algebra
/// space of the Gram matrix, preserving every joint outcome probability.
/// Inputs must be PSD and sum to at most the identity on the relevant
/// support.
std::vector<Matrix> transfer_povm(const Matrix& x,
                                  const std::vector<Matrix>& ops,
                                  TransferDirection direction);

/// Joint probability table p(k,l) = (1/N) <psi_k| Pi_l |psi_k>.
Eigen::MatrixXd joint_probabilities(const Ensemble& e,
                                    const std::vector<Matrix>& povm);

}  // namespace qse
