#include <benchmark/benchmark.h>

#include <random>

#include "qse/job.hpp"
#include "qse/oracles.hpp"

using namespace qse;

namespace {

Vector circulant(int n, double c) {
  Vector v = Vector::Zero(n);
  v(0) = 1.0;
  for (int k = 1; k < n; ++k) v(k) = c;
  return v;
}

}  // namespace

static void BM_hermitian_eig(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> gauss;
  Matrix a(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a(r, c) = cdouble(gauss(rng), gauss(rng));
  a = 0.5 * (a + a.adjoint()).eval();
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(a));
}
BENCHMARK(BM_hermitian_eig)->Arg(8)->Arg(16)->Arg(24);

static void BM_decompose_regular(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GroupTable g = build_dihedral(n);
  const Multiplier m = trivial_multiplier(g.order);
  const IrrepCatalog cat = builtin_irreps(g, m);
  for (auto _ : state)
    benchmark::DoNotOptimize(decompose_regular(g, m, cat));
}
BENCHMARK(BM_decompose_regular)->Arg(3)->Arg(4)->Arg(6);

static void BM_min_error_pipeline(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GroupTable g = build_cyclic(n);
  const Multiplier m = trivial_multiplier(n);
  const GramMatrix gram = gram_from_coefficients(circulant(n, 0.3), g, m);
  const IrrepCatalog cat = builtin_irreps(g, m);
  for (auto _ : state) {
    const Ensemble twin = associated_ensemble(gram);
    const IsotypicDecomposition dec = decompose_regular(g, m, cat);
    const EnsembleOperator op = ensemble_operator(twin, dec);
    benchmark::DoNotOptimize(build_min_error_povm(op.schmidt, dec));
  }
}
BENCHMARK(BM_min_error_pipeline)->Arg(4)->Arg(8)->Arg(12);

static void BM_phase_oracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  std::exponential_distribution<double> exp_dist(1.0);
  std::vector<double> lambdas(n);
  double sum = 0.0;
  for (double& l : lambdas) sum += (l = exp_dist(rng));
  for (double& l : lambdas) l *= n / sum;
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle_phase_search(lambdas, 16, 300, 3));
}
BENCHMARK(BM_phase_oracle)->Arg(4)->Arg(8)->Arg(12);

BENCHMARK_MAIN();
