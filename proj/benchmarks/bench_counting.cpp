#include <benchmark/benchmark.h>

#include "psq/counting.hpp"

namespace {

const psq::sieve::NumberTable& table() {
  static const psq::sieve::NumberTable t(10'000'000);
  return t;
}

void BM_CountCoprime(benchmark::State& state) {
  const std::uint64_t n = state.range(0);
  table();  // build outside the timed loop
  for (auto _ : state) benchmark::DoNotOptimize(psq::counting::count_coprime(n, 6, table()).value);
}
BENCHMARK(BM_CountCoprime)->Arg(100'000)->Arg(10'000'000)->Unit(benchmark::kMicrosecond);

// Inclusion-exclusion over residue classes versus the direct count.
void BM_CountDecomposed(benchmark::State& state) {
  const std::uint64_t n = state.range(0);
  table();  // build outside the timed loop
  for (auto _ : state)
    benchmark::DoNotOptimize(psq::counting::count_coprime_by_inclusion_exclusion(n, 6, table()).value);
}
BENCHMARK(BM_CountDecomposed)->Arg(100'000)->Arg(10'000'000)->Unit(benchmark::kMicrosecond);

}  // namespace
