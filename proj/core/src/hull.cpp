#include <algorithm>

#include "loopfluct/geometry.hpp"

namespace loopfluct {

namespace {

bool lex_less(Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

// Drops vertices whose turn angle is at most tol until every remaining one exceeds it.
std::vector<Point2> prune_flat_vertices(std::vector<Point2> v, double tol) {
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    std::vector<Point2> kept;
    kept.reserve(v.size());
    const std::size_t k = v.size();
    for (std::size_t i = 0; i < k; ++i) {
      const Point2 prev = kept.empty() ? v[(i + k - 1) % k] : kept.back();
      const Point2 u = v[i] - prev;
      const Point2 w = v[(i + 1) % k] - v[i];
      if (std::atan2(cross(u, w), dot(u, w)) > tol) {
        kept.push_back(v[i]);
      } else {
        changed = true;
      }
    }
    v = std::move(kept);
  }
  return v;
}

}  // namespace

ConvexPolygon convex_hull(std::span<const Point2> points, double collinearity_tol) {
  require(points.size() >= 3, "convex_hull: need at least 3 points");
  std::vector<Point2> p(points.begin(), points.end());
  for (const Point2& q : p) require(is_finite(q), "convex_hull: non-finite point");
  std::sort(p.begin(), p.end(), lex_less);
  p.erase(std::unique(p.begin(), p.end()), p.end());

  const Point2 lo = p.front();
  const Point2 hi = p.back();
  if (p.size() < 3) throw DegenerateHullError(lo, hi, "convex_hull: fewer than 3 distinct points");

  std::vector<Point2> h(2 * p.size());
  std::size_t k = 0;
  for (const Point2& q : p) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], q - h[k - 2]) <= 0.0) --k;
    h[k++] = q;
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    const Point2 q = p[i];
    while (k >= t && cross(h[k - 1] - h[k - 2], q - h[k - 2]) <= 0.0) --k;
    h[k++] = q;
  }
  h.resize(k - 1);

  h = prune_flat_vertices(std::move(h), collinearity_tol);
  if (h.size() < 3) {
    throw DegenerateHullError(lo, hi, "convex_hull: points are collinear within tolerance");
  }
  return ConvexPolygon(std::move(h), collinearity_tol);
}

}  // namespace loopfluct
