#include <benchmark/benchmark.h>

#include "anosov/correlation.hpp"
#include "anosov/int_matrix.hpp"
#include "anosov/observable.hpp"
#include "anosov/rng.hpp"
#include "anosov/spectral.hpp"
#include "anosov/torus.hpp"

using namespace anosov;

static void BM_BuildFamilyMatrix(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_family_matrix(n));
}
BENCHMARK(BM_BuildFamilyMatrix)->Arg(64)->Arg(256);

static void BM_DeterminantExact(benchmark::State& state) {
  const IntMatrix m = build_family_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(determinant_exact(m));
}
BENCHMARK(BM_DeterminantExact)->Arg(64)->Arg(256);

static void BM_MatrixPower(benchmark::State& state) {
  const IntMatrix m = build_family_matrix(2);
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(matrix_power(m, n));
}
BENCHMARK(BM_MatrixPower)->Arg(20)->Arg(50);

static void BM_Spectrum(benchmark::State& state) {
  const IntMatrix m = build_family_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_spectrum(m));
}
BENCHMARK(BM_Spectrum)->Arg(64)->Arg(256);

static void BM_TorusStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const WordMatrix w = WordMatrix::from(build_family_matrix(n));
  TorusPoint x(n);
  for (std::size_t d = 0; d < n; ++d) x.word(d) = 0x9E3779B97F4A7C15ull * (d + 1);
  for (auto _ : state) {
    x = w.apply(x);
    benchmark::DoNotOptimize(x);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TorusStep)->Arg(8)->Arg(256);

static void BM_ExactCorrelation(benchmark::State& state) {
  const IntMatrix t2 = build_family_matrix(2);
  const Observable f = smooth_family(1, 4, 2);
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exact_correlation(t2, f, f, n));
}
BENCHMARK(BM_ExactCorrelation)->Arg(2)->Arg(8)->Arg(32);

static void BM_MonteCarloCorrelation(benchmark::State& state) {
  const IntMatrix t2 = build_family_matrix(2);
  const Observable f = smooth_family(1, 2, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        monte_carlo_correlation(t2, f, f, 2, 100000, 42, 1));
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_MonteCarloCorrelation);

static void BM_GeneratorStream(benchmark::State& state) {
  GeneratorState gen(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(gen.next_double());
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GeneratorStream)->Arg(16)->Arg(240)->Arg(256);

static void BM_JumpAhead(benchmark::State& state) {
  GeneratorState gen(static_cast<std::size_t>(state.range(0)), 1);
  const BigInt k = (BigInt(1) << 64);
  for (auto _ : state) {
    gen.jump_ahead(k);
    benchmark::DoNotOptimize(gen.state());
  }
}
BENCHMARK(BM_JumpAhead)->Arg(16)->Arg(64);

BENCHMARK_MAIN();
