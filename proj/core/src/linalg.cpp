#include "qse/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>

namespace qse {

namespace {

HermitianSpectrum eig_descending(const Matrix& a) {
  const Matrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorClass::internal, "hermitian eigensolver failed");
  HermitianSpectrum s;
  s.dim = static_cast<int>(a.rows());
  s.eigenvalues = solver.eigenvalues().reverse();
  s.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return s;
}

}  // namespace

Matrix HermitianSpectrum::reconstruct() const {
  return eigenvectors * eigenvalues.asDiagonal().toDenseMatrix().cast<cdouble>() *
         eigenvectors.adjoint();
}

double hermiticity_deviation(const Matrix& a) {
  return max_abs(Matrix(a - a.adjoint()));
}

HermitianSpectrum hermitian_eig(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw std::invalid_argument("hermitian_eig: matrix must be square");
  const double scale = std::max(1.0, max_abs(a));
  if (hermiticity_deviation(a) > 1e-9 * scale)
    throw std::invalid_argument("hermitian_eig: input is not Hermitian");
  return eig_descending(a);
}

Matrix sqrtm_psd(const Matrix& a) {
  HermitianSpectrum s = hermitian_eig(a);
  const double scale = std::max(1.0, max_abs(a));
  RealVector roots(s.dim);
  for (int i = 0; i < s.dim; ++i) {
    double lambda = s.eigenvalues(i);
    if (lambda < -tol::psd * scale)
      throw std::invalid_argument("sqrtm_psd: matrix is not PSD");
    // Roundoff-sized eigenvalues become O(sqrt(eps)) singular values of the
    // root and would pollute rank decisions downstream; zero them outright.
    if (lambda < 1e-13 * scale) lambda = 0.0;
    roots(i) = std::sqrt(lambda);
  }
  Matrix root = s.eigenvectors *
                roots.asDiagonal().toDenseMatrix().cast<cdouble>() *
                s.eigenvectors.adjoint();
  return 0.5 * (root + root.adjoint());
}

Matrix pinv(const Matrix& x) {
  if (x.size() == 0) return Matrix(x.cols(), x.rows());
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double cutoff = std::max(1e-10 * (sigma.size() ? sigma(0) : 0.0), 1e-14);
  RealVector inv(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    inv(i) = sigma(i) > cutoff ? 1.0 / sigma(i) : 0.0;
  return svd.matrixV() * inv.asDiagonal().toDenseMatrix().cast<cdouble>() *
         svd.matrixU().adjoint();
}

PsdCheck is_psd(const Matrix& a, double tolerance) {
  HermitianSpectrum s = hermitian_eig(a);
  const double lambda_min = s.eigenvalues(s.dim - 1);
  const double scale = std::max(1.0, max_abs(a));
  return {lambda_min >= -tolerance * scale, lambda_min};
}

MinorCheck leading_minors_positive(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw std::invalid_argument("leading_minors_positive: square input required");
  const double scale = std::max(1.0, max_abs(a));
  if (hermiticity_deviation(a) > 1e-9 * scale)
    throw std::invalid_argument("leading_minors_positive: input is not Hermitian");
  const int n = static_cast<int>(a.rows());
  for (int k = 1; k <= n; ++k) {
    const cdouble det =
        Eigen::PartialPivLU<Matrix>(a.topLeftCorner(k, k)).determinant();
    if (det.real() <= 0.0) return {false, k};
  }
  return {true, 0};
}

Matrix support_basis(const Matrix& hermitian_psd, double cutoff) {
  HermitianSpectrum s = hermitian_eig(hermitian_psd);
  const double threshold =
      cutoff * std::max(1.0, s.eigenvalues.size() ? s.eigenvalues(0) : 0.0);
  int rank = 0;
  while (rank < s.dim && s.eigenvalues(rank) > threshold) ++rank;
  return s.eigenvectors.leftCols(rank);
}

Matrix support_projector(const Matrix& hermitian_psd, double cutoff) {
  const Matrix basis = support_basis(hermitian_psd, cutoff);
  return basis * basis.adjoint();
}

}  // namespace qse
