#include "qse/oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "qse/exclusion.hpp"

namespace qse {

double oracle_phase_search(std::span<const double> lambdas, int restarts,
                           int iterations, std::uint64_t seed) {
  if (lambdas.empty())
    throw std::invalid_argument("oracle_phase_search: empty multiset");
  const int n = static_cast<int>(lambdas.size());
  std::vector<double> w(n);
  for (int a = 0; a < n; ++a) w[a] = std::sqrt(std::max(0.0, lambdas[a]));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);

  std::vector<double> theta(n);
  auto phase_sum = [&] {
    cdouble total = 0.0;
    for (int a = 0; a < n; ++a) total += w[a] * std::polar(1.0, theta[a]);
    return total;
  };

  // One sweep of closed-form coordinate updates: each phase points opposite
  // the sum of the other terms.
  auto descent_sweep = [&] {
    cdouble total = phase_sum();
    for (int a = 0; a < n; ++a) {
      const cdouble term = w[a] * std::polar(1.0, theta[a]);
      const cdouble others = total - term;
      if (std::abs(others) == 0.0) continue;
      theta[a] = std::arg(-others);
      total = others + w[a] * std::polar(1.0, theta[a]);
    }
  };

  // Gauss-Newton polish on the two-component residual (Re S, Im S); descent
  // alone converges too slowly when the optimal polygon is nearly degenerate.
  auto gauss_newton = [&] {
    cdouble s = phase_sum();
    for (int step = 0; step < 60; ++step) {
      if (std::norm(s) < 1e-32) break;
      Eigen::MatrixXd jac(2, n);
      for (int a = 0; a < n; ++a) {
        const cdouble d = cdouble(0, 1) * w[a] * std::polar(1.0, theta[a]);
        jac(0, a) = d.real();
        jac(1, a) = d.imag();
      }
      Eigen::Vector2d residual(s.real(), s.imag());
      const Eigen::VectorXd delta =
          jac.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(residual);
      double scale = 1.0;
      bool improved = false;
      for (int half = 0; half < 20 && !improved; ++half, scale *= 0.5) {
        std::vector<double> trial(theta);
        for (int a = 0; a < n; ++a) trial[a] -= scale * delta(a);
        cdouble s_trial = 0.0;
        for (int a = 0; a < n; ++a)
          s_trial += w[a] * std::polar(1.0, trial[a]);
        if (std::norm(s_trial) < std::norm(s)) {
          theta = std::move(trial);
          s = s_trial;
          improved = true;
        }
      }
      if (!improved) break;
    }
  };

  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    for (int a = 0; a < n; ++a) theta[a] = uniform(rng);
    double previous = std::numeric_limits<double>::infinity();
    for (int it = 0; it < iterations; ++it) {
      descent_sweep();
      const double value = std::norm(phase_sum());
      if (previous - value < 1e-18) break;
      previous = value;
    }
    gauss_newton();
    best = std::min(best, std::norm(phase_sum()));
  }
  return best / (static_cast<double>(n) * n);
}

PovmSampleResult oracle_povm_sampler(const Ensemble& e, int samples,
                                     std::uint64_t seed) {
  if (e.dim() > 8)
    throw std::invalid_argument(
        "oracle_povm_sampler: brute-force sampling is limited to dim <= 8");
  const int order = e.order();

  const GramMatrix gram = gram_from_states(e);
  const RealVector lambdas = gram.eigenvalues();
  const double p_min = min_error_probability(
      std::span<const double>(lambdas.data(), lambdas.size()), order);

  Matrix omega = Matrix::Zero(e.dim(), e.dim());
  for (const Vector& s : e.states) omega += s * s.adjoint();
  const Matrix basis = support_basis(omega);  // dim x rank
  const int rank = static_cast<int>(basis.cols());

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_psd = [&] {
    Matrix m(rank, rank);
    for (int r = 0; r < rank; ++r)
      for (int c = 0; c < rank; ++c) m(r, c) = cdouble(gauss(rng), gauss(rng));
    return Matrix(m * m.adjoint());
  };

  PovmSampleResult result;
  result.samples = samples;
  result.floor = p_min - 1e-8;
  for (int s = 0; s < samples; ++s) {
    std::vector<Matrix> raw(order);
    Matrix total = Matrix::Zero(rank, rank);
    for (int g = 0; g < order; ++g) {
      raw[g] = random_psd();
      total += raw[g];
    }
    // Renormalize so the elements resolve the support projector exactly.
    const Matrix scale = pinv(sqrtm_psd(total));
    double error = 0.0;
    for (int g = 0; g < order; ++g) {
      const Matrix pi = basis * (scale * raw[g] * scale) * basis.adjoint();
      error += std::real(e.states[g].dot(pi * e.states[g]));
    }
    error /= order;
    result.best_error = std::min(result.best_error, error);
    if (error < result.floor) result.all_above_floor = false;
  }
  return result;
}

}  // namespace qse
