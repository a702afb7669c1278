#include <benchmark/benchmark.h>

#include <vector>

#include "mevmix/model.hpp"
#include "mevmix/random_models.hpp"
#include "mevmix/stable.hpp"
#include "mevmix/taildep.hpp"

using namespace mevmix;

namespace {

MevMixModel bench_model(std::size_t d, std::size_t q, std::uint64_t seed = 1) {
  Rng rng(seed);
  RandomModelOptions ro;
  ro.dimension = d;
  ro.components = q;
  return random_model(rng, ro);
}

void BM_PositiveStable(benchmark::State& state) {
  Rng rng(7);
  const StableAlpha alpha(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(sample_positive_stable(alpha, rng));
}
BENCHMARK(BM_PositiveStable);

void BM_ModelExponent(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto m = bench_model(d, 3);
  std::vector<double> x(d, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(model_exponent(m, x));
}
BENCHMARK(BM_ModelExponent)->Arg(2)->Arg(4)->Arg(10);

void BM_OrthantLambda(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto m = bench_model(d, 2);
  for (auto _ : state) benchmark::DoNotOptimize(orthant_lambda(m, SubsetMask::singleton(0)).lambda);
}
BENCHMARK(BM_OrthantLambda)->Arg(3)->Arg(6)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_SampleModel(benchmark::State& state) {
  const auto m = bench_model(3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(sample_model(m, 100'000, {42, 1}).values.data());
  state.SetItemsProcessed(state.iterations() * 100'000);
}
BENCHMARK(BM_SampleModel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
