#include <benchmark/benchmark.h>

#include <fwlab/initial_data.hpp>
#include <fwlab/littlewood_paley.hpp>
#include <fwlab/solver.hpp>
#include <fwlab/spectral.hpp>

namespace {

using namespace fwlab;

Field bench_data(int log2_points) {
  const GridPtr grid = make_grid(std::size_t{1} << log2_points, 32.0);
  return combined_data(grid, 3, 2.0).field;
}

void BM_Analysis(benchmark::State& state) {
  const Field u = bench_data(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(transform(u, TransformDirection::analysis));
  }
}

void BM_RhsEval(benchmark::State& state) {
  const Field u = bench_data(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rhs_eval(u));
  }
}

void BM_DyadicBlock(benchmark::State& state) {
  const Field u = bench_data(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dyadic_block(u, 3));
  }
}

void BM_BesovNorm(benchmark::State& state) {
  const Field u = bench_data(static_cast<int>(state.range(0)));
  const BesovParams params{2.0, 2.0, 2.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(besov_norm(u, params));
  }
}

// One RK4 step at fixed dt; dominated by the 12 transforms per step.
void BM_SolverStep(benchmark::State& state) {
  const Field u = bench_data(static_cast<int>(state.range(0)));
  SolverConfig config;
  config.dt_mode = SolverConfig::DtMode::fixed;
  config.dt = 1e-3;
  config.end_time = 1e-3;
  config.store_every = 1 << 30;
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(u, config));
  }
}

BENCHMARK(BM_Analysis)->DenseRange(11, 15, 2);
BENCHMARK(BM_RhsEval)->DenseRange(11, 15, 2);
BENCHMARK(BM_DyadicBlock)->DenseRange(11, 15, 2);
BENCHMARK(BM_BesovNorm)->DenseRange(11, 15, 2);
BENCHMARK(BM_SolverStep)->DenseRange(11, 15, 2);

}  // namespace

BENCHMARK_MAIN();
