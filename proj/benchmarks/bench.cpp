#include <benchmark/benchmark.h>

#include "stringctl/friction.hpp"
#include "stringctl/reach.hpp"
#include "stringctl/sampling.hpp"
#include "stringctl/spectral.hpp"

using namespace stringctl;

static void BM_SolveTrack(benchmark::State& state) {
  const PiecewiseLinear g = random_field(1, static_cast<std::size_t>(state.range(0)), 5.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_track(g, 4.0 * kTwoPi));
}
BENCHMARK(BM_SolveTrack)->Arg(8)->Arg(64)->Arg(512);

static void BM_FlowSnapshot(benchmark::State& state) {
  const PhiTrack track = solve_track(random_field(2, 64, 5.0), 4.0 * kTwoPi);
  for (auto _ : state) benchmark::DoNotOptimize(flow_snapshot(track, 3.7 * kTwoPi));
}
BENCHMARK(BM_FlowSnapshot);

static void BM_SupportFull(benchmark::State& state) {
  const DualVector xi = random_duals(1, static_cast<std::size_t>(state.range(0)), 3, DualKind::kFull).front();
  for (auto _ : state) benchmark::DoNotOptimize(support_full(xi, 8.0 * kTwoPi));
}
BENCHMARK(BM_SupportFull)->Arg(4)->Arg(16)->Arg(64);

static void BM_LimitSupport(benchmark::State& state) {
  const DualVector xi = random_duals(1, 8, 4, DualKind::kFull).front();
  for (auto _ : state) benchmark::DoNotOptimize(limit_support_full(xi));
}
BENCHMARK(BM_LimitSupport);

static void BM_SecularRoots(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(secular_roots(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_SecularRoots)->Arg(10)->Arg(80)->Arg(200);
BENCHMARK_MAIN();
