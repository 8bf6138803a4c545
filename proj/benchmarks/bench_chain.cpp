#include <benchmark/benchmark.h>

#include "loopfluct/mcmc.hpp"
#include "loopfluct/sampler.hpp"

namespace {

using namespace loopfluct;

void BM_ChainStep(benchmark::State& st) {
  const double T = static_cast<double>(st.range(0));
  const ChainConfig cfg = ChainConfig::for_time(T, static_cast<std::int64_t>(32 * T));
  ChainState s = init_state(cfg);
  RngStream rng(3, 0);
  for (auto _ : st) benchmark::DoNotOptimize(step(s, cfg, rng).accepted);
}
BENCHMARK(BM_ChainStep)->Arg(8)->Arg(32)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_SampleLoop(benchmark::State& st) {
  const TimeGrid grid(1.0, st.range(0));
  RngStream rng(5, 0);
  for (auto _ : st) benchmark::DoNotOptimize(sample_loop(grid, rng).points().data());
}
BENCHMARK(BM_SampleLoop)->Arg(4096)->Unit(benchmark::kMicrosecond);

void BM_Normal(benchmark::State& st) {
  RngStream rng(5, 0);
  for (auto _ : st) benchmark::DoNotOptimize(rng.normal());
}
BENCHMARK(BM_Normal);

}  // namespace
