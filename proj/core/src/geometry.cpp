#include "loopfluct/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace loopfluct {

double signed_area(std::span<const Point2> loop) {
  require(loop.size() >= 3, "signed_area: need at least 3 points");
  // Shoelace relative to the first point; same value, less cancellation.
  const Point2 o = loop[0];
  double twice = 0.0;
  for (std::size_t k = 1; k + 1 < loop.size(); ++k) {
    twice += cross(loop[k] - o, loop[k + 1] - o);
  }
  return 0.5 * twice;
}

double polyline_length(std::span<const Point2> points, bool closed) {
  double total = 0.0;
  for (std::size_t k = 1; k < points.size(); ++k) total += distance(points[k - 1], points[k]);
  if (closed && points.size() > 1) total += distance(points.back(), points.front());
  return total;
}

double dist_point_segment(Point2 p, const Segment& s) {
  const Point2 d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(p, s.a);
  const double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
  return distance(p, s.a + t * d);
}

namespace {

double turn_angle(Point2 prev, Point2 cur, Point2 next) {
  const Point2 u = cur - prev;
  const Point2 v = next - cur;
  return std::atan2(cross(u, v), dot(u, v));
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Point2> ccw_vertices, double collinearity_tol)
    : vertices_(std::move(ccw_vertices)), collinearity_tol_(collinearity_tol) {
  const std::size_t k = vertices_.size();
  if (k < 3) {
    const Point2 a = k > 0 ? vertices_.front() : Point2{};
    const Point2 b = k > 0 ? vertices_.back() : Point2{};
    throw DegenerateHullError(a, b, "convex polygon needs at least 3 vertices");
  }
  for (const Point2& p : vertices_) {
    require(is_finite(p), "convex polygon: non-finite vertex");
  }
  for (std::size_t i = 0; i < k; ++i) {
    const double angle =
        turn_angle(vertices_[(i + k - 1) % k], vertices_[i], vertices_[(i + 1) % k]);
    if (!(angle > collinearity_tol_ && angle < std::numbers::pi)) {
      throw DegenerateHullError(vertices_[(i + k - 1) % k], vertices_[(i + 1) % k],
                                "convex polygon: turn angle outside (tol, pi) at vertex " +
                                    std::to_string(i));
    }
  }
  if (!(area() > 0.0)) {
    throw DegenerateHullError(vertices_.front(), vertices_.back(),
                              "convex polygon: non-positive area");
  }
}

double ConvexPolygon::inner_distance(std::size_t i, Point2 p) const {
  const Segment e = edge(i);
  const Point2 d = e.b - e.a;
  return cross(d, p - e.a) / norm(d);
}

double ConvexPolygon::min_inner_distance(Point2 p) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < vertices_.size(); ++i) best = std::min(best, inner_distance(i, p));
  return best;
}

double ConvexPolygon::diameter() const {
  double best = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
      best = std::max(best, distance(vertices_[i], vertices_[j]));
    }
  }
  return best;
}

double max_local_roughness(std::span<const Point2> points, const ConvexPolygon& hull) {
  const double slack = kContainmentSlack * std::max(1.0, hull.diameter());
  const std::size_t k = hull.size();
  double worst = 0.0;
  for (const Point2& p : points) {
    if (!hull.contains(p, slack)) {
      fail(ErrorCode::InconsistentHull, "max_local_roughness: point (" + std::to_string(p.x) +
                                            ", " + std::to_string(p.y) + ") lies outside hull");
    }
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) {
      // The segment distance is bounded below by the line distance.
      if (std::abs(hull.inner_distance(i, p)) >= nearest) continue;
      nearest = std::min(nearest, dist_point_segment(p, hull.edge(i)));
    }
    worst = std::max(worst, nearest);
  }
  return worst;
}

double longest_facet(const ConvexPolygon& hull, double tol) {
  const auto& v = hull.vertices();
  const std::size_t k = v.size();
  // A facet corner is a vertex whose turn angle reaches tol.
  std::vector<std::size_t> corners;
  for (std::size_t i = 0; i < k; ++i) {
    if (turn_angle(v[(i + k - 1) % k], v[i], v[(i + 1) % k]) >= tol) corners.push_back(i);
  }
  if (corners.size() < 2) return hull.diameter();
  double best = 0.0;
  for (std::size_t c = 0; c < corners.size(); ++c) {
    const Point2 a = v[corners[c]];
    const Point2 b = v[corners[(c + 1) % corners.size()]];
    best = std::max(best, distance(a, b));
  }
  return best;
}

double hull_arclength(const ConvexPolygon& hull) { return hull.arclength(); }

namespace {

int orientation(Point2 a, Point2 b, Point2 c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

bool on_segment(Point2 a, Point2 b, Point2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_intersect(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

}  // namespace

bool is_simple_polygon(std::span<const Point2> polygon) {
  const std::size_t k = polygon.size();
  if (k < 3) return false;
  auto at = [&](std::size_t i) { return polygon[i % k]; };
  for (std::size_t i = 0; i < k; ++i) {
    if (at(i) == at(i + 1)) return false;
  }
  for (std::size_t i = 0; i < k; ++i) {
    // Adjacent edges may only share their common vertex: reject fold-backs.
    const Point2 a = at(i), b = at(i + 1), c = at(i + 2);
    if (orientation(a, b, c) == 0 && dot(b - a, c - b) < 0.0) return false;
    for (std::size_t j = i + 2; j < k; ++j) {
      if (i == 0 && j == k - 1) continue;
      if (segments_intersect(at(i), at(i + 1), at(j), at(j + 1))) return false;
    }
  }
  return true;
}

}  // namespace loopfluct
