#include <benchmark/benchmark.h>

#include "psq/search.hpp"

namespace {

void BM_ExceptionScan(benchmark::State& state) {
  const std::uint64_t limit = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(psq::search::exception_set(30030, limit, psq::search::Parity::EvenOnly).exceptions);
  state.SetItemsProcessed(state.iterations() * limit);
}
BENCHMARK(BM_ExceptionScan)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_VerifyRange(benchmark::State& state) {
  psq::search::VerifyOptions opt;
  opt.workers = static_cast<unsigned>(state.range(1));
  const std::uint64_t hi = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(psq::search::verify_range(600, hi, opt).failures);
  state.SetItemsProcessed(state.iterations() * (hi - 599));
}
BENCHMARK(BM_VerifyRange)->Args({1'000'000, 1})->Args({1'000'000, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
