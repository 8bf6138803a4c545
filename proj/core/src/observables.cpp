#include "loopfluct/observables.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <tuple>

#include "loopfluct/raster.hpp"

namespace loopfluct {

PolygonalApprox polygonal_approx(const LoopPath& loop, int m, double t_prime) {
  const TimeGrid& grid = loop.grid();
  const std::int64_t n = grid.n();
  require(m >= 3 && m <= n, "polygonal_approx: need 3 <= m <= n");
  require(t_prime >= 0.0 && t_prime <= grid.T() / m, "polygonal_approx: t_prime outside [0, T/m]");

  PolygonalApprox out;
  out.m = m;
  const auto shift = static_cast<std::int64_t>(std::llround(t_prime / grid.dt()));
  out.t_prime = static_cast<double>(shift) * grid.dt();
  for (int j = 0; j < m; ++j) {
    const auto base = static_cast<std::int64_t>(
        std::llround(static_cast<double>(j) * static_cast<double>(n) / m));
    out.indices.push_back(grid.wrap(base + shift));
    out.vertices.push_back(loop[out.indices.back()]);
  }

  for (int i = 0; i < m; ++i) {
    const int prev = (i + m - 1) % m;
    const Segment seg{out.vertices[prev], out.vertices[i]};
    const std::int64_t from = out.indices[prev];
    const std::int64_t len = grid.wrap(out.indices[i] - from);
    double r = 0.0, r_hat = 0.0;
    for (std::int64_t k = 0; k <= len; ++k) {
      const Point2 p = loop[from + k];
      const double s = static_cast<double>(k) / static_cast<double>(len);
      const Point2 lin = seg.a + s * (seg.b - seg.a);
      r = std::max(r, dist_point_segment(p, seg));
      r_hat = std::max(r_hat, distance(p, lin));
    }
    out.L.push_back(seg.length());
    out.segments.push_back(seg);
    out.R.push_back(r);
    out.R_hat.push_back(r_hat);
    out.Q.push_back({seg, r});
  }
  return out;
}

std::vector<double> normalized_increments(const PolygonalApprox& approx, double T) {
  const double scale = std::sqrt(static_cast<double>(approx.m) / T);
  std::vector<double> e;
  e.reserve(2 * approx.segments.size());
  for (const Segment& s : approx.segments) {
    e.push_back(scale * (s.b.x - s.a.x));
    e.push_back(scale * (s.b.y - s.a.y));
  }
  return e;
}

ObservableRecord measure(const LoopPath& loop, double h) {
  ObservableRecord rec;
  rec.T = loop.grid().T();
  rec.n = loop.size();
  rec.h = h;
  const RasterRegion region = enclosed_region(loop.points(), h);
  rec.area = region.area();
  rec.area_excess = rec.area - std::numbers::pi * rec.T * rec.T;
  rec.r_in = inradius(region).radius;
  rec.r_out = outradius(loop.points()).radius;
  rec.ann_width = rec.r_out - rec.r_in;
  const ConvexPolygon hull = convex_hull(loop.points());
  rec.mlr = max_local_roughness(loop.points(), hull);
  rec.longest_facet = longest_facet(hull);
  rec.hull_arclength = hull_arclength(hull);
  return rec;
}

const char* observables_csv_header() {
  return "T,n,h,seed,stream_id,sweep,area,area_excess,r_in,r_out,ann_width,mlr,longest_facet,"
         "hull_arclength";
}

void write_observables_csv_row(std::ostream& os, const ObservableRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "%.17g,%" PRId64 ",%.17g,%" PRIu64 ",%" PRIu64 ",%" PRId64
                ",%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                r.T, r.n, r.h, r.seed, r.stream_id, r.sweep, r.area, r.area_excess, r.r_in,
                r.r_out, r.ann_width, r.mlr, r.longest_facet, r.hull_arclength);
  os << buf;
}

void write_observables_csv(std::ostream& os, std::vector<ObservableRecord> records) {
  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.T, a.stream_id, a.sweep) < std::tie(b.T, b.stream_id, b.sweep);
  });
  os << observables_csv_header() << '\n';
  for (const auto& r : records) write_observables_csv_row(os, r);
}

}  // namespace loopfluct
