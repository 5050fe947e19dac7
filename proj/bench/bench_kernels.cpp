// Serial reference vs OpenMP kernels on the default sweep and a mean-field batch.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "dwbec/kernels.hpp"

namespace {

const dwbec::ModelParams kBase{1.0, 20.0, 20.0, 20.0};

void BM_SweepSerial(benchmark::State& state) {
  const auto omegas = dwbec::linspace(0.5, 2.0, 61);
  const auto times = dwbec::linspace(0.0, 200.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto g = dwbec::sweep_concurrence_serial(kBase, omegas, times);
    benchmark::DoNotOptimize(g.values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(omegas.size() * times.size()));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto omegas = dwbec::linspace(0.5, 2.0, 61);
  const auto times = dwbec::linspace(0.0, 200.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto g = dwbec::sweep_concurrence_parallel(kBase, omegas, times);
    benchmark::DoNotOptimize(g.values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(omegas.size() * times.size()));
  state.counters["threads"] = omp_get_max_threads();
}

std::vector<dwbec::MeanFieldState> batch_starts(std::size_t n) {
  std::vector<dwbec::MeanFieldState> s;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n);
    s.push_back({1.2 * (f - 0.5), -0.9 * (f - 0.5), 0.5 * f, -0.3, 0.0});
  }
  return s;
}

void BM_MeanFieldBatchSerial(benchmark::State& state) {
  const dwbec::MeanFieldParams p{kBase, 3.0, 3.0};
  const auto starts = batch_starts(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto out = dwbec::integrate_batch_serial(p, starts, 1.0, 1e-4, {1000});
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_MeanFieldBatchParallel(benchmark::State& state) {
  const dwbec::MeanFieldParams p{kBase, 3.0, 3.0};
  const auto starts = batch_starts(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto out = dwbec::integrate_batch_parallel(p, starts, 1.0, 1e-4, {1000});
    benchmark::DoNotOptimize(out.data());
  }
  state.counters["threads"] = omp_get_max_threads();
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(201)->Arg(2001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(201)->Arg(2001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MeanFieldBatchSerial)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MeanFieldBatchParallel)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
