#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "loopfluct/geometry.hpp"
#include "loopfluct/sampler.hpp"

namespace loopfluct {

/// Points within `radius` of the segment `axis`.
struct Stadium {
  Segment axis;
  double radius = 0.0;

  bool contains(Point2 p, double slack = 0.0) const {
    return dist_point_segment(p, axis) <= radius + slack;
  }
};

/// Inscribed polygon with vertices at times jT/m + t' and per-edge fluctuation radii.
/// Edge i joins vertices[i-1] to vertices[i] (cyclically) and covers the grid window
/// indices[i-1] .. indices[i].
struct PolygonalApprox {
  int m = 0;
  double t_prime = 0.0;  // after snapping to the grid
  std::vector<std::int64_t> indices;
  std::vector<Point2> vertices;
  std::vector<double> L;
  std::vector<Segment> segments;
  std::vector<double> R;      // max distance of the window to segment i
  std::vector<double> R_hat;  // max distance of the window to its linear interpolation
  std::vector<Stadium> Q;
};

/// Requires 3 <= m <= n and t_prime in [0, T/m]. Vertex j sits at grid index
/// round(j n / m + t_prime / dt) mod n.
PolygonalApprox polygonal_approx(const LoopPath& loop, int m, double t_prime = 0.0);

/// Interleaved sqrt(m/T) (dx, dy) of the edge vectors vertices[i] - vertices[i-1].
std::vector<double> normalized_increments(const PolygonalApprox& approx, double T);

struct ObservableRecord {
  double T = 0.0;
  std::int64_t n = 0;
  double h = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::int64_t sweep = 0;
  double area = 0.0;
  double area_excess = 0.0;
  double r_in = 0.0;
  double r_out = 0.0;
  double ann_width = 0.0;
  double mlr = 0.0;
  double longest_facet = 0.0;
  double hull_arclength = 0.0;
};

/// Raster area and inradius at cell size h; outradius, roughness, facet and hull length
/// from the exact loop vertices. Metadata fields other than T, n, h are left zero.
ObservableRecord measure(const LoopPath& loop, double h);

/// Column header without trailing newline.
const char* observables_csv_header();
void write_observables_csv_row(std::ostream& os, const ObservableRecord& rec);
/// Header plus rows sorted by (T, stream_id, sweep).
void write_observables_csv(std::ostream& os, std::vector<ObservableRecord> records);

struct ScalingFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::vector<std::pair<double, double>> points;  // (log T, log mean)
};

/// Least-squares fit of log(mean) against log(T), where mean averages the replicate values
/// of each T. The 95% interval is a percentile bootstrap over replicates within each T,
/// widened if necessary to contain the point estimate.
ScalingFit scaling_fit(const std::map<double, std::vector<double>>& groups,
                       int resamples = 10000, std::uint64_t seed = 0x5eed);

}  // namespace loopfluct
