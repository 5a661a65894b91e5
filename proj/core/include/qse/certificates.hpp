#pragma once

#include <string>

#include "qse/exclusion.hpp"

namespace qse {

class certification_error : public Error {
 public:
  explicit certification_error(const std::string& what)
      : Error(ErrorClass::certificate, what) {}
};

/// A feasible dual point whose value matches the primal one, proving
/// optimality without running an SDP solver.
struct DualCertificate {
  ExclusionMode mode = ExclusionMode::min_error;
  bool self_certified = false;  // perfect region: zero failure certifies itself
  double value = 0.0;           // Tr(Y), or 1 - Tr(X)
  double primal = 0.0;
  double feasibility_min_eigenvalue = 0.0;
  double hermiticity_deviation = 0.0;  // of the min-error dual operator
  double epsilon = 0.0;                // unambiguous slack
  double nu_tilde = 0.0;               // accepted multiplier of |psi><psi|/eps
  Matrix dual_operator;                // Y or X
  std::string note;
};

/// Builds Y = (1/|G|) sum_g U_g |w><w|psi><psi| U_g^dag and verifies
/// Tr(Y) = p_min (1e-9) plus |psi><psi| - |G| Y >= -1e-8. Throws
/// certification_error with the violating quantity otherwise. In the perfect
/// region the zero error probability certifies itself.
DualCertificate certify_min_error(const ExclusionSolution& solution,
                                  const Ensemble& ensemble);

/// Builds the diagonal dual ansatz X (value q_min - epsilon) and searches
/// nu by doubling until X + (nu/epsilon)|psi><psi| - Omega/|G| is PSD.
DualCertificate certify_unambiguous(const ExclusionSolution& solution,
                                    const Ensemble& ensemble,
                                    const SchmidtData& schmidt,
                                    const IsotypicDecomposition& dec,
                                    double epsilon = 1e-6);

}  // namespace qse
