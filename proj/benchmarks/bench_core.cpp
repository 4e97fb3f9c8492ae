#include <benchmark/benchmark.h>

#include <vector>

#include "prophet/asymptotics.hpp"
#include "prophet/simulation.hpp"
#include "prophet/values.hpp"

namespace {

using prophet::DistributionModel;

void BM_DpTable(benchmark::State& state) {
  const auto d = DistributionModel::pareto(0.7);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(prophet::dp_table(d, n, k).final_value());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * k));
}
BENCHMARK(BM_DpTable)->Args({1 << 12, 1})->Args({1 << 12, 147})->Args({1 << 16, 776});

void BM_CeTable(benchmark::State& state) {
  const auto d = DistributionModel::pareto(0.7);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(prophet::ce_table(d, n, k).final_value());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * k));
}
BENCHMARK(BM_CeTable)->Args({1 << 12, 1})->Args({1 << 12, 147})->Args({1 << 16, 776});

void BM_ProphetQuadrature(benchmark::State& state) {
  const auto d = DistributionModel::frechet(0.5);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(prophet::prophet_value(d, n, 2).value);
}
BENCHMARK(BM_ProphetQuadrature)->Arg(100)->Arg(100000);

void BM_VSequence(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(prophet::asymptotics::v_sequence(0.6, k).back());
}
BENCHMARK(BM_VSequence)->Arg(200)->Arg(5000);

void BM_WorstCaseSweep(benchmark::State& state) {
  std::vector<double> grid;
  for (int i = 1; i <= 999; ++i) grid.push_back(i / 1000.0);
  const std::vector<std::size_t> ks{1, 2, 3, 5, 10, 20, 50, 100, 200};
  for (auto _ : state) benchmark::DoNotOptimize(prophet::asymptotics::worst_case_sweep(ks, grid));
}
BENCHMARK(BM_WorstCaseSweep)->Unit(benchmark::kMillisecond);

void BM_SimulateCe(benchmark::State& state) {
  const auto d = DistributionModel::exponential();
  const auto reps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        prophet::run_policy(d, prophet::PolicySpec::ce(), 50, 5, reps, 1, prophet::SimOptions{1, false}).mean);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(reps));
}
BENCHMARK(BM_SimulateCe)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
