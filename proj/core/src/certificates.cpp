#include "qse/certificates.hpp"

#include <cmath>
#include <sstream>

namespace qse {

namespace {

Matrix ensemble_operator_matrix(const Ensemble& e) {
  Matrix omega = Matrix::Zero(e.dim(), e.dim());
  for (const Vector& state : e.states) omega += state * state.adjoint();
  return omega;
}

}  // namespace

DualCertificate certify_min_error(const ExclusionSolution& solution,
                                  const Ensemble& ensemble) {
  DualCertificate cert;
  cert.mode = ExclusionMode::min_error;
  cert.primal = solution.p_min;

  if (solution.perfect) {
    cert.self_certified = true;
    cert.value = 0.0;
    cert.note =
        "perfect-exclusion region: probabilities are nonnegative, so an "
        "achieved error of zero is optimal without a dual witness";
    return cert;
  }

  const int order = ensemble.order();
  const Vector& psi = ensemble.seed;
  const Vector& omega = solution.seed_omega;
  if (omega.size() != ensemble.dim())
    throw std::invalid_argument(
        "certify_min_error: solution does not live in the ensemble space");

  const cdouble overlap = omega.dot(psi);  // <w|psi>
  const Matrix kernel = overlap * (omega * psi.adjoint());
  Matrix y = Matrix::Zero(ensemble.dim(), ensemble.dim());
  for (int g = 0; g < order; ++g)
    y += ensemble.rep.at(g) * kernel * ensemble.rep.at(g).adjoint();
  y /= static_cast<double>(order);

  cert.hermiticity_deviation = hermiticity_deviation(y);
  if (cert.hermiticity_deviation > 1e-8)
    throw certification_error(
        "dual operator is not Hermitian: deviation = " +
        std::to_string(cert.hermiticity_deviation));
  const Matrix y_sym = 0.5 * (y + y.adjoint());

  cert.value = y_sym.trace().real();
  if (std::abs(cert.value - solution.p_min) > 1e-9) {
    std::ostringstream msg;
    msg << "dual value Tr(Y) = " << cert.value
        << " does not match the primal p_min = " << solution.p_min;
    throw certification_error(msg.str());
  }

  const Matrix feasibility =
      psi * psi.adjoint() - static_cast<double>(order) * y_sym;
  const HermitianSpectrum spec = hermitian_eig(feasibility);
  cert.feasibility_min_eigenvalue = spec.eigenvalues(spec.dim - 1);
  if (cert.feasibility_min_eigenvalue < -tol::feasibility) {
    std::ostringstream msg;
    msg << "dual constraint violated: min eigenvalue of |psi><psi| - |G|Y is "
        << cert.feasibility_min_eigenvalue;
    throw certification_error(msg.str());
  }

  cert.dual_operator = y_sym;
  return cert;
}

DualCertificate certify_unambiguous(const ExclusionSolution& solution,
                                    const Ensemble& ensemble,
                                    const SchmidtData& schmidt,
                                    const IsotypicDecomposition& dec,
                                    double epsilon) {
  if (epsilon <= 0.0)
    throw std::invalid_argument("certify_unambiguous: epsilon must be > 0");

  DualCertificate cert;
  cert.mode = ExclusionMode::unambiguous;
  cert.primal = solution.q_min;
  cert.epsilon = epsilon;

  if (solution.perfect) {
    cert.self_certified = true;
    cert.value = 0.0;
    cert.note =
        "perfect-exclusion region: the inconclusive probability is zero and "
        "certifies itself";
    return cert;
  }

  const int order = ensemble.order();
  const int dim = ensemble.dim();
  const auto [top_block, top_k] = dominant_component(schmidt);

  // beta = sqrt(alpha/|G|); Delta sums d*beta over the non-dominant
  // components. The epsilon correction sits on the smallest positive one.
  double delta = 0.0;
  int small_block = -1, small_k = -1;
  double alpha_small = 0.0;
  for (size_t b = 0; b < schmidt.blocks.size(); ++b)
    for (int k = 0; k < schmidt.blocks[b].positive_count; ++k) {
      if (static_cast<int>(b) == top_block && k == top_k) continue;
      const double alpha = schmidt.blocks[b].alphas(k);
      if (small_block < 0 || alpha <= alpha_small) {
        small_block = static_cast<int>(b);
        small_k = k;
        alpha_small = alpha;
      }
      delta += schmidt.blocks[b].dim * std::sqrt(alpha / order);
    }

  if (small_block < 0) {
    // Single-ray ensemble: the zero-error constraint forces Pi_Q psi = psi,
    // so Q = 1 is optimal with no dual witness needed.
    cert.self_certified = true;
    cert.value = solution.q_min;
    cert.note =
        "ensemble spans a single ray; the zero-error constraint forces the "
        "inconclusive outcome with certainty";
    return cert;
  }

  Matrix x_rot = Matrix::Zero(dim, dim);
  for (size_t b = 0; b < schmidt.blocks.size(); ++b) {
    if (static_cast<int>(b) == top_block) continue;
    const SchmidtBlock& block = schmidt.blocks[b];
    for (int k = 0; k < block.positive_count; ++k) {
      const double beta = std::sqrt(block.alphas(k) / order);
      double entry = beta * (beta + delta);
      if (static_cast<int>(b) == small_block && k == small_k)
        entry += epsilon / block.dim;
      for (int n = 0; n < block.dim; ++n)
        for (int t = 0; t < block.multiplicity; ++t)
          for (int tp = 0; tp < block.multiplicity; ++tp)
            x_rot(block.coord(n, t), block.coord(n, tp)) +=
                entry * block.u_basis(t, k) * std::conj(block.u_basis(tp, k));
    }
  }
  const Matrix x = dec.basis.adjoint() * x_rot * dec.basis;

  cert.value = 1.0 - x.trace().real();
  if (std::abs(cert.value - (solution.q_min - epsilon)) > 1e-8) {
    std::ostringstream msg;
    msg << "dual value 1 - Tr(X) = " << cert.value
        << " does not equal q_min - epsilon = "
        << solution.q_min - epsilon;
    throw certification_error(msg.str());
  }

  const Vector& psi = ensemble.seed;
  const Matrix omega_op = ensemble_operator_matrix(ensemble);
  const Matrix psi_op = psi * psi.adjoint();
  const Matrix base = x - omega_op / static_cast<double>(order);

  double nu = 1.0;
  const double nu_cap = std::ldexp(1.0, 64);
  while (true) {
    const Matrix feasibility = base + (nu / epsilon) * psi_op;
    const HermitianSpectrum spec = hermitian_eig(feasibility);
    cert.feasibility_min_eigenvalue = spec.eigenvalues(spec.dim - 1);
    if (cert.feasibility_min_eigenvalue >= -tol::feasibility) break;
    nu *= 2.0;
    if (nu > nu_cap) {
      std::ostringstream msg;
      msg << "no feasible nu up to 2^64; min eigenvalue stuck at "
          << cert.feasibility_min_eigenvalue;
      throw certification_error(msg.str());
    }
  }
  cert.nu_tilde = nu;
  cert.dual_operator = x;
  return cert;
}

}  // namespace qse
