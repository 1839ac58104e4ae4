#include <benchmark/benchmark.h>

#include "monocount/exact_counter.hpp"
#include "monocount/instance_gen.hpp"
#include "monocount/predictor.hpp"
#include "monocount/psi_sampler.hpp"

using namespace monocount;

namespace {

Formula instance(std::uint32_t n, double lambda, std::uint64_t seed) {
  GenParams p;
  p.n = n;
  p.lambda = lambda;
  p.seed = seed;
  return random_formula(p);
}

// Sparse instances at n = 40 .. 68, lambda = 1.2.
void BM_CountModels(benchmark::State& state) {
  const Formula f = instance(static_cast<std::uint32_t>(state.range(0)), 1.2, 1);
  CountOptions o;
  o.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(count_models(f, o));
}
BENCHMARK(BM_CountModels)
    ->ArgsProduct({{40, 52, 68}, {1, 4}})
    ->Unit(benchmark::kMillisecond);

void BM_PredictIstop(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(std::uint64_t{1} << state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(predict_istop(n, 1.0, 1.0, PredictOptions{.keep_trace = false}));
  }
}
BENCHMARK(BM_PredictIstop)->DenseRange(10, 24, 2)->Unit(benchmark::kMillisecond);

void BM_SamplePsi(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(std::uint64_t{1} << state.range(0));
  PsiOptions o;
  o.materialize = state.range(1) != 0;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_psi(n, 1.0, 1.0, ++seed, o));
}
BENCHMARK(BM_SamplePsi)->ArgsProduct({{12, 16, 20}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_GenerateFormula(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(std::uint64_t{1} << state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(instance(n, 1.0, ++seed));
}
BENCHMARK(BM_GenerateFormula)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
