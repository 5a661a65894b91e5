#pragma once

#include "qse/types.hpp"

namespace qse {

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending
/// with eigenvector columns aligned.
struct HermitianSpectrum {
  RealVector eigenvalues;
  Matrix eigenvectors;
  int dim = 0;

  Matrix reconstruct() const;
};

double hermiticity_deviation(const Matrix& a);

/// Throws std::invalid_argument when ||A - A^dag|| exceeds 1e-9 * max(1,||A||).
HermitianSpectrum hermitian_eig(const Matrix& a);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-tol, 0) are clamped to zero; a significantly negative eigenvalue throws.
Matrix sqrtm_psd(const Matrix& a);

/// Moore-Penrose pseudoinverse via SVD with a relative rank cutoff.
Matrix pinv(const Matrix& x);

struct PsdCheck {
  bool psd = false;
  double min_eigenvalue = 0.0;
};

/// True when lambda_min(A) >= -tolerance * max(1, ||A||_max).
PsdCheck is_psd(const Matrix& a, double tolerance = tol::psd);

struct MinorCheck {
  bool positive = false;
  int first_failing_order = 0;  // 1-based; 0 when all minors are positive
};

/// Sylvester test: all leading principal minors strictly positive,
/// each computed by pivoted elimination on the leading submatrix.
MinorCheck leading_minors_positive(const Matrix& a);

/// Orthonormal basis (columns) of the eigenspace with eigenvalues above
/// cutoff * max(1, lambda_max); used as the support of PSD operators.
Matrix support_basis(const Matrix& hermitian_psd, double cutoff = tol::psd);

/// Projector onto the support of a Hermitian PSD operator.
Matrix support_projector(const Matrix& hermitian_psd,
                         double cutoff = tol::psd);

}  // namespace qse
