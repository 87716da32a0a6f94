#include <benchmark/benchmark.h>

#include "qows/inversion.hpp"
#include "qows/random.hpp"

namespace {

// A fixed non-commutative, non-associative order-4 square and a reachable target.
struct Fixture {
  qows::Quasigroup q = qows::order4_by_index(355);
  qows::QString a;
  explicit Fixture(std::size_t n) : a(n) {
    qows::SeededRng rng(n);
    for (auto& x : a) x = static_cast<qows::Symbol>(rng.below(4));
  }
};

void BM_attack_r1(benchmark::State& state) {
  Fixture f(static_cast<std::size_t>(state.range(0)));
  const auto b = qows::r1(f.q, f.a);
  std::uint64_t guesses = 0;
  for (auto _ : state) guesses = qows::attack_r1(f.q, b).guesses;
  state.counters["guesses"] = static_cast<double>(guesses);
}
BENCHMARK(BM_attack_r1)->DenseRange(6, 15, 3);

void BM_attack_r2(benchmark::State& state) {
  Fixture f(static_cast<std::size_t>(state.range(0)));
  const auto b = qows::r2(f.q, f.a);
  std::uint64_t guesses = 0;
  for (auto _ : state) guesses = qows::attack_r2(f.q, b).guesses;
  state.counters["guesses"] = static_cast<double>(guesses);
}
BENCHMARK(BM_attack_r2)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_brute(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Fixture f(n);
  const auto spec = qows::OwfSpec::make(f.q, n);
  const auto b = qows::r_n(spec, f.a);
  qows::SearchOptions opts;
  opts.workers = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(qows::brute_preimages(spec, b, opts));
}
BENCHMARK(BM_brute)->Args({6, 1})->Args({8, 1})->Args({8, 4})->Unit(benchmark::kMillisecond);

void BM_histogram(benchmark::State& state) {
  const auto spec = qows::OwfSpec::make(qows::order4_by_index(355), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qows::preimage_histogram(spec));
}
BENCHMARK(BM_histogram)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
