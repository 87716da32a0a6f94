#include <benchmark/benchmark.h>

#include "qows/random.hpp"
#include "qows/transforms.hpp"

namespace {

qows::QString random_string(std::size_t n, std::size_t order, std::uint64_t seed) {
  qows::SeededRng rng(seed);
  qows::QString a(n);
  for (auto& x : a) x = static_cast<qows::Symbol>(rng.below(order));
  return a;
}

void BM_e_transform(benchmark::State& state) {
  const auto q = qows::random_latin(4, 1);
  const auto a = random_string(static_cast<std::size_t>(state.range(0)), 4, 2);
  for (auto _ : state) benchmark::DoNotOptimize(qows::e_transform(q, 0, a));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_e_transform)->RangeMultiplier(8)->Range(8, 1 << 15);

void BM_e_inverse(benchmark::State& state) {
  const auto q = qows::random_latin(4, 1);
  const auto b = random_string(static_cast<std::size_t>(state.range(0)), 4, 3);
  for (auto _ : state) benchmark::DoNotOptimize(qows::e_inverse(q, 0, b));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_e_inverse)->RangeMultiplier(8)->Range(8, 1 << 15);

void BM_r_n(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto spec = qows::OwfSpec::make(qows::random_latin(4, 4), n,
                                        {qows::Leader::constant(3), qows::Leader::index(0)});
  const auto a = random_string(n, 4, 5);
  for (auto _ : state) benchmark::DoNotOptimize(qows::r_n(spec, a));
}
BENCHMARK(BM_r_n)->Arg(8)->Arg(32)->Arg(128)->Arg(512);

}  // namespace
