#include <benchmark/benchmark.h>

#include "madstat/expansion.hpp"
#include "madstat/generators.hpp"
#include "madstat/gof.hpp"
#include "madstat/limit_laws.hpp"
#include "madstat/longrun.hpp"
#include "madstat/mad_core.hpp"

namespace {

using namespace madstat;

void BM_SampleMad(benchmark::State& state) {
  const Series x = generate(IidNormal{}, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_mad(x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleMad)->Range(1 << 10, 1 << 22);

void BM_Decompose(benchmark::State& state) {
  const Series x = generate(IidNormal{}, static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(x, 0.0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Decompose)->Range(1 << 10, 1 << 20);

void BM_LongrunCov(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Series y = generate(make_ar1(0.5, IidNormal{}), n, 3);
  const Series z = generate(IidExponential{}, n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(longrun_cov(y, z, LagWindowSpec{}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LongrunCov)->Range(1 << 10, 1 << 20);

void BM_KsTwoSample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Series a = generate(IidNormal{}, n, 5);
  const Series b = generate(IidNormal{}, n, 6);
  for (auto _ : state) benchmark::DoNotOptimize(ks_two_sample(a, b));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KsTwoSample)->Range(1 << 10, 1 << 20);

void BM_SampleStable(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_stable(1.5, true, 1.0, n, 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleStable)->Range(1 << 10, 1 << 20);

void BM_GenerateAr1(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GeneratorSpec g = make_ar1(0.5, IidExponential{});
  for (auto _ : state) benchmark::DoNotOptimize(generate(g, n, 8));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GenerateAr1)->Range(1 << 10, 1 << 20);

}  // namespace

BENCHMARK_MAIN();
