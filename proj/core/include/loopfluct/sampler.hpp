#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "loopfluct/geometry.hpp"
#include "loopfluct/rng.hpp"

namespace loopfluct {

/// Uniform grid on [0, T] with n steps. Indices are taken modulo n.
class TimeGrid {
 public:
  TimeGrid(double T, std::int64_t n);

  double T() const { return T_; }
  std::int64_t n() const { return n_; }
  double dt() const { return T_ / static_cast<double>(n_); }
  double time(std::int64_t k) const { return dt() * static_cast<double>(wrap(k)); }
  std::int64_t wrap(std::int64_t k) const { return ((k % n_) + n_) % n_; }
  /// Nearest grid index to time t (reduced modulo T).
  std::int64_t nearest_index(double t) const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double T_;
  std::int64_t n_;
};

/// Closed discretized planar loop: points[k] = B(k dt) for k in [0, n), points[0] is the
/// origin, and point n is implicitly point 0.
class LoopPath {
 public:
  /// Throws InvalidInput unless points.size() == grid.n(), points[0] == (0, 0) and
  /// all coordinates are finite.
  LoopPath(TimeGrid grid, std::vector<Point2> points);

  const TimeGrid& grid() const { return grid_; }
  std::int64_t size() const { return grid_.n(); }
  std::span<const Point2> points() const { return points_; }
  Point2 operator[](std::int64_t k) const { return points_[static_cast<std::size_t>(grid_.wrap(k))]; }

  friend bool operator==(const LoopPath&, const LoopPath&) = default;

 private:
  TimeGrid grid_;
  std::vector<Point2> points_;
};

/// Brownian loop: W from i.i.d. N(0, dt) increments per coordinate, B(t_k) = W(t_k) - (k/n) W(T).
LoopPath sample_loop(const TimeGrid& grid, RngStream& rng);

/// Planar Brownian bridge from p to q over `duration` with `steps` steps.
/// Returns steps + 1 points; the first is p and the last is q exactly.
std::vector<Point2> sample_bridge(Point2 p, Point2 q, double duration, std::int64_t steps,
                                  RngStream& rng);

/// Same law as sample_bridge, written into `out` (resized to steps + 1).
void sample_bridge_into(Point2 p, Point2 q, double duration, std::int64_t steps, RngStream& rng,
                        std::vector<Point2>& out);

/// Maximum over grid points of a one-dimensional Brownian bridge 0 -> 0 on [0, T]
/// sampled with n steps.
double sample_bridge_max_1d(double T, std::int64_t n, RngStream& rng);

/// P(M+ > r) = exp(-2 r^2 / T) for the maximum M+ of a 1-D Brownian bridge of duration T.
double bridge_max_cdf_complement(double r, double T);

/// Chi-squared density with m degrees of freedom, evaluated in log space.
double chi2_pdf(double x, int m);

}  // namespace loopfluct
