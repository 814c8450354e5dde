// Parallel kernels against their serial references.

#include <vector>

#include <benchmark/benchmark.h>

#include "powex/convergence_lab.hpp"
#include "powex/exact_law.hpp"
#include "powex/montecarlo.hpp"

namespace {

using namespace powex;

void BM_SimulateParallel(benchmark::State& state) {
  const NormingConstants nc = norming_constants(100.0, PowerIndex(2.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_block_maxima(nc, state.range(0), 1).values.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 100);
}

void BM_SimulateSerial(benchmark::State& state) {
  const NormingConstants nc = norming_constants(100.0, PowerIndex(2.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_block_maxima_serial(nc, state.range(0), 1).values.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 100);
}

std::vector<double> x_grid(long long count) {
  std::vector<double> xs;
  for (long long i = 0; i < count; ++i) xs.push_back(-2.0 + 8.0 * i / count);
  return xs;
}

void BM_ExactGridParallel(benchmark::State& state) {
  const NormingConstants nc = norming_constants(1e6, PowerIndex(1.0));
  const std::vector<double> xs = x_grid(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exact_grid(nc, xs).data());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ExactGridSerial(benchmark::State& state) {
  const NormingConstants nc = norming_constants(1e6, PowerIndex(1.0));
  const std::vector<double> xs = x_grid(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exact_grid_serial(nc, xs).data());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ErrorCurveParallel(benchmark::State& state) {
  const std::vector<double> grid = default_n_grid();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        error_curve(PowerIndex(1.0), 0.0, grid, ApproxOrder::third, Target::cdf).rows.data());
  }
}

void BM_ErrorCurveSerial(benchmark::State& state) {
  const std::vector<double> grid = default_n_grid();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        error_curve_serial(PowerIndex(1.0), 0.0, grid, ApproxOrder::third, Target::cdf).rows.data());
  }
}

}  // namespace

BENCHMARK(BM_SimulateParallel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateSerial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactGridParallel)->Arg(1000)->Arg(100000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ExactGridSerial)->Arg(1000)->Arg(100000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ErrorCurveParallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ErrorCurveSerial)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
