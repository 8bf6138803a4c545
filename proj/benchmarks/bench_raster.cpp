#include <benchmark/benchmark.h>

#include "loopfluct/mcmc.hpp"
#include "loopfluct/raster.hpp"

namespace {

using namespace loopfluct;

// A conditioned-looking loop: the chain's initial n-gon after a few sweeps.
std::vector<Point2> warm_loop(double T) {
  const auto n = static_cast<std::int64_t>(32 * T);
  const ChainConfig cfg = ChainConfig::for_time(T, n);
  ChainState s = init_state(cfg);
  RngStream rng(7, 0);
  for (int k = 0; k < 5; ++k) run_sweep(s, cfg, rng);
  return {s.points().begin(), s.points().end()};
}

void BM_DenseRegion(benchmark::State& st) {
  const double T = static_cast<double>(st.range(0));
  const auto loop = warm_loop(T);
  for (auto _ : st) benchmark::DoNotOptimize(enclosed_region(loop, T / 256).cell_count());
}
BENCHMARK(BM_DenseRegion)->Arg(8)->Arg(32)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_RunArea(benchmark::State& st) {
  const double T = static_cast<double>(st.range(0));
  const auto loop = warm_loop(T);
  RunAreaEngine engine;
  for (auto _ : st) benchmark::DoNotOptimize(engine.cell_count(loop, T / 256));
}
BENCHMARK(BM_RunArea)->Arg(8)->Arg(32)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_Inradius(benchmark::State& st) {
  const double T = static_cast<double>(st.range(0));
  const RasterRegion region = enclosed_region(warm_loop(T), T / 256);
  for (auto _ : st) benchmark::DoNotOptimize(inradius(region).radius);
}
BENCHMARK(BM_Inradius)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
