#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qse/schmidt.hpp"

namespace qse {

enum class ExclusionMode { min_error, unambiguous };

/// Minimum average error probability of excluding one state from the
/// ensemble, from the Gram eigenvalue multiset (descending or not):
/// [max(0, sqrt(l1) - sum_{a>1} sqrt(la)) / |G|]^2.
double min_error_probability(std::span<const double> lambdas, int order);

/// Minimum probability of the inconclusive outcome when errors are
/// forbidden: (sum_a sqrt(la) / |G|) * max(0, sqrt(l1) - sum_{a>1} sqrt(la)).
double unambiguous_failure_probability(std::span<const double> lambdas,
                                       int order);

/// True when sqrt(l1) <= sum_{a>1} sqrt(la) (up to 1e-10), or immediately
/// when the top eigenvalue is degenerate within the degeneracy tolerance.
bool perfect_exclusion_possible(std::span<const double> lambdas);

/// Phase assignment over the eigenvalue multiset. Each 1-dim block
/// contributes a rigid term sqrt(alpha); each higher-dim block is a flexible
/// group whose magnitude can be steered anywhere in [0, d * sum_k
/// sqrt(alpha_k)] by ramping the phases of its copies.
struct PhaseGroup {
  int block_index = 0;
  bool flexible = false;
  double max_magnitude = 0.0;
  double magnitude = 0.0;  // chosen
  double phase = 0.0;      // group direction
  double ramp = 0.0;       // phase increment across copies (0 = aligned)
};

struct PhaseSolution {
  std::vector<double> flat_sqrts;  // sqrt(lambda_a), block-major order
  std::vector<double> phases;      // theta_a, aligned with flat_sqrts
  std::vector<PhaseGroup> groups;
  double residual = 0.0;  // |sum_a sqrt(lambda_a) e^{i theta_a}|

  double weight_total() const;
};

/// Chooses phases closing the weighted phase sum to zero. Rigid terms and
/// flexible maxima are split greedily into two piles which, together with
/// the largest term, form a triangle; angles come from the law of cosines.
/// Only valid in the perfect-exclusion region.
PhaseSolution solve_phase_closure(const SchmidtData& schmidt);

/// Antipodal assignment (everything opposite the dominant term); outside the
/// perfect region its residual is sqrt(l1) - sum_{a>1} sqrt(la).
PhaseSolution antipodal_phase_solution(const SchmidtData& schmidt);

struct ExclusionSolution {
  ExclusionMode mode = ExclusionMode::min_error;
  double p_min = 0.0;
  double q_min = 0.0;
  bool perfect = false;
  Vector seed_omega;  // in the analysis space
  double gamma = 1.0;
  std::vector<Matrix> povm;            // Pi_g = U_g |w><w| U_g^dag
  std::optional<Matrix> inconclusive;  // Pi_Q (unambiguous mode)
  std::optional<PhaseSolution> phase_solution;
  double achieved_error = 0.0;         // Tr(Pi_g rho_g), identical over g
  double achieved_inconclusive = 0.0;  // <psi| Pi_Q |psi>
  double covariance_spread = 0.0;      // max_g deviation of per-state error
  double completeness_deviation = 0.0;  // ||sum Pi (+ Pi_Q) - proj_span||
  std::string note;
};

/// Covariant rank-1 measurement attaining min_error_probability. In the
/// perfect region the block bases realize the phase-closure solution with
/// Fourier-pair bases; otherwise the seed flips the sign of every component
/// except the dominant one.
ExclusionSolution build_min_error_povm(const SchmidtData& schmidt,
                                       const IsotypicDecomposition& dec);

/// Zero-error measurement attaining unambiguous_failure_probability, with
/// the inconclusive element Pi_Q = proj_span - sum_g Pi_g of rank at most 1.
/// In the perfect region this is the min-error solution with Pi_Q = 0.
ExclusionSolution build_unambiguous_povm(const SchmidtData& schmidt,
                                         const IsotypicDecomposition& dec);

}  // namespace qse
