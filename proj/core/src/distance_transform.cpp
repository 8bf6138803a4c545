#include <limits>

#include "loopfluct/raster.hpp"

namespace loopfluct {

namespace {

constexpr double kFar = 1e20;

// 1-D squared distance transform of sampled function f (lower envelope of parabolas).
void transform_1d(const double* f, double* d, std::int64_t n, std::int64_t* v, double* z) {
  std::int64_t k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  auto intersect = [&](std::int64_t q, std::int64_t p) {
    const auto dq = static_cast<double>(q);
    const auto dp = static_cast<double>(p);
    return ((f[q] + dq * dq) - (f[p] + dp * dp)) / (2.0 * dq - 2.0 * dp);
  };
  for (std::int64_t q = 1; q < n; ++q) {
    double s = intersect(q, v[k]);
    while (s <= z[k]) {
      --k;
      s = intersect(q, v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  for (std::int64_t q = 0; q < n; ++q) {
    while (z[k + 1] < static_cast<double>(q)) ++k;
    const auto diff = static_cast<double>(q - v[k]);
    d[q] = diff * diff + f[v[k]];
  }
}

}  // namespace

std::vector<double> squared_distance_to_complement(const RasterRegion& region) {
  const std::int64_t nx = region.nx();
  const std::int64_t ny = region.ny();
  std::vector<double> grid(static_cast<std::size_t>(nx * ny));
  const auto mask = region.mask();
  for (std::size_t idx = 0; idx < grid.size(); ++idx) grid[idx] = mask[idx] ? kFar : 0.0;

  const std::int64_t len = std::max(nx, ny);
  std::vector<double> f(len), d(len), z(len + 1);
  std::vector<std::int64_t> v(len);

  for (std::int64_t i = 0; i < nx; ++i) {
    for (std::int64_t j = 0; j < ny; ++j) f[j] = grid[j * nx + i];
    transform_1d(f.data(), d.data(), ny, v.data(), z.data());
    for (std::int64_t j = 0; j < ny; ++j) grid[j * nx + i] = d[j];
  }
  for (std::int64_t j = 0; j < ny; ++j) {
    double* row = grid.data() + j * nx;
    std::copy(row, row + nx, f.begin());
    transform_1d(f.data(), row, nx, v.data(), z.data());
  }
  return grid;
}

Disk inradius(const RasterRegion& region) {
  if (region.cell_count() == 0) fail(ErrorCode::EmptyRegion, "inradius: empty region");
  const std::vector<double> d2 = squared_distance_to_complement(region);
  const std::int64_t nx = region.nx();
  std::int64_t best = -1;
  for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(d2.size()); ++idx) {
    if (region.mask()[idx] && (best < 0 || d2[idx] > d2[best])) best = idx;
  }
  const double radius = std::sqrt(d2[best]) * region.h();
  return {region.window().cell_center(best % nx, best / nx), radius};
}

}  // namespace loopfluct
