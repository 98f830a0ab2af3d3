#include <benchmark/benchmark.h>

#include "hardy/bvp.hpp"
#include "hardy/params.hpp"
#include "hardy/radial.hpp"
#include "hardy/sweep.hpp"

using namespace hardy;

static void BM_Classify(benchmark::State& state) {
  double theta = -4.0;
  for (auto _ : state) {
    const ProblemParams p{3, 2.0, theta, 0.1};
    benchmark::DoNotOptimize(classify(p));
    theta = theta > 4.0 ? -4.0 : theta + 1e-3;
  }
}
BENCHMARK(BM_Classify);

static void BM_Shoot(benchmark::State& state) {
  const ProblemParams p{3, 2, 0, 0};
  ShootSpec spec;
  spec.points = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(shoot_u_gamma(spec, p));
}
BENCHMARK(BM_Shoot)->Arg(512)->Arg(4096)->Unit(benchmark::kMillisecond);

static void BM_SolveAnnulus(benchmark::State& state) {
  AnnulusProblem ap;
  ap.params = {3, 2, 0, 0};
  ap.r_a = 1e-3;
  ap.g_a = 1e3;
  const auto nodes = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_annulus(ap, nodes));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveAnnulus)->RangeMultiplier(4)->Range(256, 65536)->Complexity(benchmark::oN)->Unit(benchmark::kMicrosecond);

static void BM_Atlas(benchmark::State& state) {
  SweepSpec s;
  const auto n = static_cast<std::size_t>(state.range(0));
  s.axes = {{"lambda", -3, 3, n}, {"theta", -4, 4, n}};
  s.fixed = {3, 2, 0, 0};
  s.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(s));
}
BENCHMARK(BM_Atlas)->Arg(201)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
