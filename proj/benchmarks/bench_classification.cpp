#include <benchmark/benchmark.h>

#include "qows/classification.hpp"

namespace {

void BM_permutation_search(benchmark::State& state) {
  const auto& q = qows::order4_by_index(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qows::permutation_search(q, 2, 4));
}
// #355 has a witness; #47 exhausts the bound.
BENCHMARK(BM_permutation_search)->Arg(355)->Arg(47)->Unit(benchmark::kMillisecond);

void BM_period_profile(benchmark::State& state) {
  const auto& q = qows::order4_by_index(static_cast<std::size_t>(state.range(0)));
  const qows::QString motif = {0, 1, 2, 3};
  for (auto _ : state) benchmark::DoNotOptimize(qows::period_profile(q, 0, motif, 4096, 32));
}
BENCHMARK(BM_period_profile)->Arg(46)->Arg(47)->Unit(benchmark::kMicrosecond);

void BM_census(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qows::census_order4());
}
BENCHMARK(BM_census)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace
