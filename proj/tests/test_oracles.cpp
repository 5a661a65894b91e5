#include <doctest.h>

#include "qse/oracles.hpp"
#include "test_helpers.hpp"

using namespace qse;
using namespace qse::testing;

TEST_CASE("phase search on golden multisets") {
  CHECK(oracle_phase_search(std::vector<double>{1.0, 1.0}) < 1e-12);

  const std::vector<double> z2{1.5, 0.5};
  const double expected = std::pow((std::sqrt(1.5) - std::sqrt(0.5)) / 2.0, 2);
  CHECK(std::abs(oracle_phase_search(z2) - expected) < 1e-9);
  CHECK(std::abs(oracle_phase_search(z2) - 0.066987) < 1e-6);

  CHECK(std::abs(oracle_phase_search(std::vector<double>{1.0}) - 1.0) < 1e-12);
}

TEST_CASE("phase search matches the closed form on random spectra") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const int order = 2 + static_cast<int>(rng() % 7);  // 2..8
    const std::vector<double> lambdas = random_spectrum(order, rng);
    const double closed = min_error_probability(lambdas, order);
    const double oracle = oracle_phase_search(lambdas, 32, 500, rng());
    CHECK(std::abs(oracle - closed) < 1e-7);
  }
}

TEST_CASE("sampled POVMs never beat the optimum") {
  {
    const GramMatrix g = gram_from_coefficients(circulant_coefficients(2, 0.5),
                                                build_cyclic(2),
                                                trivial_multiplier(2));
    const PovmSampleResult r =
        oracle_povm_sampler(associated_ensemble(g), 2000);
    CHECK(r.all_above_floor);
    CHECK(r.best_error >= r.floor);
  }
  {
    const GramMatrix g = gram_from_coefficients(circulant_coefficients(3, 0.9),
                                                build_cyclic(3),
                                                trivial_multiplier(3));
    const PovmSampleResult r =
        oracle_povm_sampler(associated_ensemble(g), 2000);
    CHECK(r.all_above_floor);
  }
  {
    // Perfect-region ensemble: the floor is zero and samples stay above it.
    const GramMatrix g =
        gram_from_states(make_ensemble(pauli_rep(), tetrahedron_seed()));
    const PovmSampleResult r =
        oracle_povm_sampler(associated_ensemble(g), 500);
    CHECK(r.floor == doctest::Approx(-1e-8));
    CHECK(r.all_above_floor);
    CHECK(r.best_error >= -1e-12);
  }
}
