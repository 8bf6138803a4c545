#include <benchmark/benchmark.h>

#include "loopfluct/geometry.hpp"
#include "loopfluct/sampler.hpp"

namespace {

using namespace loopfluct;

std::vector<Point2> brownian_points(std::int64_t n) {
  RngStream rng(11, 0);
  const LoopPath loop = sample_loop(TimeGrid(1.0, n), rng);
  return {loop.points().begin(), loop.points().end()};
}

void BM_ConvexHull(benchmark::State& st) {
  const auto pts = brownian_points(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(convex_hull(pts).size());
}
BENCHMARK(BM_ConvexHull)->Arg(4096);

void BM_Outradius(benchmark::State& st) {
  const auto pts = brownian_points(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(outradius(pts).radius);
}
BENCHMARK(BM_Outradius)->Arg(4096);

void BM_ChebyshevInradius(benchmark::State& st) {
  const ConvexPolygon hull = convex_hull(brownian_points(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(chebyshev_inradius_convex(hull).radius);
}
BENCHMARK(BM_ChebyshevInradius)->Arg(4096);

}  // namespace
