#include <benchmark/benchmark.h>

#include "saalab/bounds.hpp"
#include "saalab/engine.hpp"
#include "saalab/estimators.hpp"
#include "saalab/flow.hpp"

namespace {

using namespace saalab;

// Steps per second of one trajectory, no checkpoints until the end.
void BM_RunPath(benchmark::State& state, const Problem& problem) {
  const std::uint64_t steps = static_cast<std::uint64_t>(state.range(0));
  const StepPlan plan(Schedule(0.25, 1.0), steps);
  const std::vector<std::uint64_t> cps{steps};
  std::uint64_t index = 0;
  for (auto _ : state) {
    RngStream rng(1, index++);
    run_path(problem, plan, Vector{1.0, 0.0}, cps, rng,
             [](std::size_t, std::uint64_t, std::span<const double> x) {
               benchmark::DoNotOptimize(x.data());
             });
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(steps));
}

void BM_RotationPath(benchmark::State& state) { BM_RunPath(state, *rotation_problem()); }
BENCHMARK(BM_RotationPath)->Arg(1024)->Arg(4096);

void BM_QuadraticPath(benchmark::State& state) {
  BM_RunPath(state, *make_problem("quadratic"));
}
BENCHMARK(BM_QuadraticPath)->Arg(1024)->Arg(4096);

void BM_WeakErrorMc(benchmark::State& state) {
  const auto p = rotation_problem();
  const std::vector<std::uint64_t> cps{1, 4, 16, 64, 256};
  const TestFunction psi = TestFunction::sin_sum(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        weak_error_mc(*p, Schedule(0.25, 1.0), Vector{1.0, 0.0}, psi, cps, {4096, 1, 1}));
  }
  state.SetItemsProcessed(state.iterations() * 4096 * 256);
}
BENCHMARK(BM_WeakErrorMc)->Unit(benchmark::kMillisecond);

void BM_IntegrateFlow(benchmark::State& state) {
  const MeanField g = [](const Vector& x) { return rotation_g(x); };
  const double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(integrate_flow(g, Vector{1.0, 0.0}, 1.0, h));
}
BENCHMARK(BM_IntegrateFlow)->Arg(100)->Arg(1000);

void BM_KLambda(benchmark::State& state) {
  const KLambdaParams p{0.5, 0.25, 1.0, 0.45};
  for (auto _ : state) benchmark::DoNotOptimize(k_lambda(p, static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_KLambda)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
