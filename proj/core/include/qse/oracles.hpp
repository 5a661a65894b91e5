#pragma once

#include <cstdint>
#include <span>

#include "qse/gram.hpp"

namespace qse {

inline constexpr std::uint64_t kDefaultOracleSeed = 0x51c0ffee;

/// Minimizes |sum_a sqrt(lambda_a) e^{i theta_a}|^2 / N^2 over the phases by
/// random-restart coordinate descent; each update points a term opposite the
/// sum of the others, which is its closed-form optimum.
double oracle_phase_search(std::span<const double> lambdas, int restarts = 32,
                           int iterations = 500,
                           std::uint64_t seed = kDefaultOracleSeed);

struct PovmSampleResult {
  double best_error = 1.0;
  int samples = 0;
  double floor = 0.0;   // p_min - 1e-8
  bool all_above_floor = true;
};

/// Samples random exclusion POVMs (random PSD operators renormalized to
/// resolve the ensemble's support projector) and confirms none beats the
/// closed-form minimum error probability.
PovmSampleResult oracle_povm_sampler(const Ensemble& e, int samples,
                                     std::uint64_t seed = kDefaultOracleSeed);

}  // namespace qse
