#include "loopfluct/sampler.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace loopfluct {

TimeGrid::TimeGrid(double T, std::int64_t n) : T_(T), n_(n) {
  require(T > 0.0 && std::isfinite(T), "TimeGrid: T must be positive and finite");
  require(n >= 2, "TimeGrid: n must be at least 2");
}

std::int64_t TimeGrid::nearest_index(double t) const {
  const double steps = std::round(t / dt());
  return wrap(static_cast<std::int64_t>(std::fmod(steps, static_cast<double>(n_))));
}

LoopPath::LoopPath(TimeGrid grid, std::vector<Point2> points)
    : grid_(grid), points_(std::move(points)) {
  require(static_cast<std::int64_t>(points_.size()) == grid_.n(),
          "LoopPath: expected " + std::to_string(grid_.n()) + " points, got " +
              std::to_string(points_.size()));
  require(points_[0] == Point2{}, "LoopPath: points[0] must be the origin");
  for (const Point2& p : points_) require(is_finite(p), "LoopPath: non-finite point");
}

LoopPath sample_loop(const TimeGrid& grid, RngStream& rng) {
  const std::int64_t n = grid.n();
  const double sd = std::sqrt(grid.dt());
  std::vector<Point2> w(static_cast<std::size_t>(n) + 1);
  for (std::int64_t k = 1; k <= n; ++k) {
    const double dx = sd * rng.normal();
    const double dy = sd * rng.normal();
    w[k] = w[k - 1] + Point2{dx, dy};
  }
  const Point2 end = w[n];
  std::vector<Point2> pts(static_cast<std::size_t>(n));
  for (std::int64_t k = 1; k < n; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(n);
    pts[k] = w[k] - s * end;
  }
  return LoopPath(grid, std::move(pts));
}

void sample_bridge_into(Point2 p, Point2 q, double duration, std::int64_t steps, RngStream& rng,
                        std::vector<Point2>& out) {
  require(duration > 0.0 && std::isfinite(duration), "sample_bridge: duration must be positive");
  require(steps >= 1, "sample_bridge: steps must be at least 1");
  out.resize(static_cast<std::size_t>(steps) + 1);
  out[0] = p;
  if (steps > 1) {
    // Free walk from p, then subtract the linear correction that sends its end to q.
    const double sd = std::sqrt(duration / static_cast<double>(steps));
    Point2 w = p;
    for (std::int64_t k = 1; k <= steps; ++k) {
      const double dx = sd * rng.normal();
      const double dy = sd * rng.normal();
      w += Point2{dx, dy};
      out[k] = w;
    }
    const Point2 miss = out[steps] - q;
    for (std::int64_t k = 1; k < steps; ++k) {
      const double s = static_cast<double>(k) / static_cast<double>(steps);
      out[k] -= s * miss;
    }
  }
  out[steps] = q;
}

std::vector<Point2> sample_bridge(Point2 p, Point2 q, double duration, std::int64_t steps,
                                  RngStream& rng) {
  std::vector<Point2> out;
  sample_bridge_into(p, q, duration, steps, rng, out);
  return out;
}

double sample_bridge_max_1d(double T, std::int64_t n, RngStream& rng) {
  require(T > 0.0 && n >= 1, "sample_bridge_max_1d: need T > 0 and n >= 1");
  const double sd = std::sqrt(T / static_cast<double>(n));
  // The linear correction needs W_n, so the walk is stored first.
  thread_local std::vector<double> walk;
  walk.resize(static_cast<std::size_t>(n) + 1);
  walk[0] = 0.0;
  for (std::int64_t k = 1; k <= n; ++k) walk[k] = walk[k - 1] + sd * rng.normal();
  const double end = walk[n];
  const double inv_n = 1.0 / static_cast<double>(n);
  double best = 0.0;
  for (std::int64_t k = 1; k < n; ++k) {
    best = std::max(best, walk[k] - static_cast<double>(k) * inv_n * end);
  }
  return best;
}

double bridge_max_cdf_complement(double r, double T) {
  require(r >= 0.0, "bridge_max_cdf_complement: r must be non-negative");
  require(T > 0.0, "bridge_max_cdf_complement: T must be positive");
  return std::exp(-2.0 * r * r / T);
}

double chi2_pdf(double x, int m) {
  require(x >= 0.0, "chi2_pdf: x must be non-negative");
  require(m >= 1, "chi2_pdf: m must be at least 1");
  const double half = 0.5 * m;
  if (x == 0.0) {
    if (m == 1) return HUGE_VAL;
    return m == 2 ? 0.5 : 0.0;
  }
  const double log_f =
      (half - 1.0) * std::log(x) - 0.5 * x - half * std::numbers::ln2 - std::lgamma(half);
  return std::exp(log_f);
}

}  // namespace loopfluct
