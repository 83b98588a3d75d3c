#include <benchmark/benchmark.h>

#include "psq/sieve.hpp"

namespace {

void BM_PrimeSegment(benchmark::State& state) {
  const std::uint64_t lo = 1'000'000'000, span = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(psq::sieve::sieve_primes(lo, lo + span - 1).count());
  state.SetItemsProcessed(state.iterations() * span);
}
BENCHMARK(BM_PrimeSegment)->RangeMultiplier(8)->Range(1 << 12, 1 << 21);

void BM_SquarefreeSegment(benchmark::State& state) {
  const std::uint64_t lo = 1'000'000'000, span = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(psq::sieve::sieve_squarefree(lo, lo + span - 1).count());
  state.SetItemsProcessed(state.iterations() * span);
}
BENCHMARK(BM_SquarefreeSegment)->RangeMultiplier(8)->Range(1 << 12, 1 << 21);

void BM_MobiusSegment(benchmark::State& state) {
  const std::uint64_t span = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(psq::sieve::sieve_mobius(1, span));
  state.SetItemsProcessed(state.iterations() * span);
}
BENCHMARK(BM_MobiusSegment)->Arg(1 << 20);

}  // namespace
