#include <benchmark/benchmark.h>

#include "gridlab/env.h"
#include "gridlab/rng.h"

namespace gridlab {
namespace {

// Uniform-random RWS steps; range(0) toggles observation rendering.
void BM_EnvStep(benchmark::State& state) {
  EnvOptions options;
  options.render_observations = state.range(0) != 0;
  Env env = MakeEnv("rws", 2, 1, options);
  env.Reset();
  Rng rng(2);
  std::vector<int> actions(2);
  for (auto _ : state) {
    if (!env.running()) env.Reset();
    for (int& a : actions) a = static_cast<int>(rng.Below(8));
    benchmark::DoNotOptimize(env.Step(actions).rewards.data());
  }
  state.counters["frames/s"] =
      benchmark::Counter(static_cast<double>(state.iterations()) * 2, benchmark::Counter::kIsRate);
}
BENCHMARK(BM_EnvStep)->Arg(0)->Arg(1);

void BM_EnvReset(benchmark::State& state) {
  Env env = MakeEnv("rws", 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(env.Reset().data());
}
BENCHMARK(BM_EnvReset);

}  // namespace
}  // namespace gridlab
