#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qse {

using cdouble = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Failure classes, numbered to match the CLI exit codes.
enum class ErrorClass {
  internal = 1,
  schema = 2,
  invalid_gram = 3,
  unsupported = 4,
  certificate = 5,
  oracle = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what)
      : std::runtime_error(what), cls_(cls) {}
  ErrorClass error_class() const { return cls_; }

 private:
  ErrorClass cls_;
};

inline double max_abs(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline double max_abs(const Vector& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

namespace tol {
// Norms, unit-modulus phases, exact table data.
inline constexpr double unit = 1e-12;
// Unitarity and (twisted) homomorphism law of representations.
inline constexpr double rep_law = 1e-10;
// Relative PSD acceptance for well-conditioned operators.
inline constexpr double psd = 1e-9;
// A Gram matrix is rejected below -gram_psd * ||G||; smaller negativity is clamped.
inline constexpr double gram_psd = 1e-8;
// Eigenvalues closer than this (relative) count as degenerate.
inline constexpr double degenerate = 1e-9;
// Schmidt coefficients below this (relative) are treated as exact zeros.
inline constexpr double zero_alpha = 1e-13;
// Dual certificates must have feasibility eigenvalues above -feasibility.
inline constexpr double feasibility = 1e-8;
}  // namespace tol

}  // namespace qse
