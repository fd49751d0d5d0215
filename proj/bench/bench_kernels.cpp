// Serial reference vs OpenMP kernels for the shape sweep and the brute-force
// oracle. Both modes return identical results; only wall time differs.

#include <benchmark/benchmark.h>

#include "advcongest/document.hpp"
#include "advcongest/opt_solver.hpp"
#include "advcongest/oracle.hpp"

namespace {

using namespace advcongest;

Instance bench_instance(int players, std::size_t resources) {
  GeneratorParams params;
  params.players = players;
  params.resources = resources;
  params.seed = 20240601;
  params.coeff_max = 40;
  params.budget_max = 200;
  return to_instance(generate_instance(params));
}

void BM_BestAlpha(benchmark::State& state, Execution execution) {
  const Instance inst = bench_instance(static_cast<int>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(best_alpha(inst, OptOptions{CbarPairing::coupled, execution}));
  }
}

void BM_Oracle(benchmark::State& state, Execution execution) {
  const Instance inst = bench_instance(static_cast<int>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle_best_alpha(inst, execution));
}

void sizes_opt(benchmark::internal::Benchmark* b) {
  b->Args({30, 10})->Args({60, 12})->Args({120, 16})->Unit(benchmark::kMillisecond);
}

void sizes_oracle(benchmark::internal::Benchmark* b) {
  b->Args({20, 6})->Args({30, 8})->Args({40, 10})->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK_CAPTURE(BM_BestAlpha, serial, Execution::serial)->Apply(sizes_opt);
BENCHMARK_CAPTURE(BM_BestAlpha, parallel, Execution::parallel)->Apply(sizes_opt);
BENCHMARK_CAPTURE(BM_Oracle, serial, Execution::serial)->Apply(sizes_oracle);
BENCHMARK_CAPTURE(BM_Oracle, parallel, Execution::parallel)->Apply(sizes_oracle);

BENCHMARK_MAIN();
