#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "loopfluct/error.hpp"

namespace loopfluct {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
  friend constexpr Point2 operator*(Point2 p, double s) { return {s * p.x, s * p.y}; }
  constexpr Point2& operator+=(Point2 o) { x += o.x; y += o.y; return *this; }
  constexpr Point2& operator-=(Point2 o) { x -= o.x; y -= o.y; return *this; }
  friend constexpr bool operator==(Point2, Point2) = default;
};

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

struct Segment {
  Point2 a;
  Point2 b;

  double length() const { return distance(a, b); }
};

struct Disk {
  Point2 center;
  double radius = 0.0;

  bool contains(Point2 p, double slack = 0.0) const {
    return distance(p, center) <= radius + slack;
  }
};

/// Default turn-angle tolerance (radians) below which hull vertices are dropped.
inline constexpr double kHullCollinearityTol = 1e-9;
/// Default turn-angle tolerance used when merging hull edges into facets.
inline constexpr double kFacetCollinearityTol = 1e-6;
/// Absolute containment slack, scaled by max(1, diameter) where noted.
inline constexpr double kContainmentSlack = 1e-9;

/// Shoelace area of the closed polygon through `loop` (last point joins the first).
/// Positive for counterclockwise order.
double signed_area(std::span<const Point2> loop);

/// Sum of edge lengths; `closed` adds the edge from the last point back to the first.
double polyline_length(std::span<const Point2> points, bool closed);

/// Euclidean distance from `p` to the closed segment `s`.
double dist_point_segment(Point2 p, const Segment& s);

/// Convex polygon in counterclockwise order. Every instance satisfies: at least three
/// vertices, every turn angle in (collinearity_tol, pi), positive area.
class ConvexPolygon {
 public:
  /// Validates `ccw_vertices` against the invariants; throws DegenerateHull otherwise.
  ConvexPolygon(std::vector<Point2> ccw_vertices, double collinearity_tol = kHullCollinearityTol);

  const std::vector<Point2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  double collinearity_tol() const { return collinearity_tol_; }

  Segment edge(std::size_t i) const {
    return {vertices_[i], vertices_[(i + 1) % vertices_.size()]};
  }
  double area() const { return signed_area(vertices_); }
  double arclength() const { return polyline_length(vertices_, true); }

  /// Signed distance of `p` to the line of edge `i`; non-negative on the inner side.
  double inner_distance(std::size_t i, Point2 p) const;
  /// Minimum of inner_distance over edges. Non-negative iff `p` is inside.
  double min_inner_distance(Point2 p) const;
  bool contains(Point2 p, double slack = kContainmentSlack) const {
    return min_inner_distance(p) >= -slack;
  }
  /// Largest distance between two vertices.
  double diameter() const;

 private:
  std::vector<Point2> vertices_;
  double collinearity_tol_;
};

/// Thrown when a hull cannot be formed; carries the two extreme input points.
class DegenerateHullError : public Error {
 public:
  DegenerateHullError(Point2 a, Point2 b, const std::string& what)
      : Error(ErrorCode::DegenerateHull, what), a_(a), b_(b) {}

  Point2 first() const { return a_; }
  Point2 second() const { return b_; }

 private:
  Point2 a_;
  Point2 b_;
};

/// Convex hull by Andrew's monotone chain. Vertices whose turn angle does not exceed
/// `collinearity_tol` are dropped.
ConvexPolygon convex_hull(std::span<const Point2> points,
                          double collinearity_tol = kHullCollinearityTol);

/// Minimal enclosing circle (Welzl, move-to-front).
Disk outradius(std::span<const Point2> points);

/// Max over `points` of the distance to the boundary of `hull`.
/// Throws InconsistentHull if a point lies outside `hull` by more than the
/// containment slack (scaled by the hull diameter).
double max_local_roughness(std::span<const Point2> points, const ConvexPolygon& hull);

/// Length of the longest facet, merging consecutive edges whose turn angle is below `tol`.
double longest_facet(const ConvexPolygon& hull, double tol = kFacetCollinearityTol);

double hull_arclength(const ConvexPolygon& hull);

/// Largest inscribed disk of a convex polygon, solved as a linear program over the
/// edge half-planes.
Disk chebyshev_inradius_convex(const ConvexPolygon& hull);

/// True iff no two non-adjacent edges of the closed polygon intersect and adjacent
/// edges only share their common vertex.
bool is_simple_polygon(std::span<const Point2> polygon);

}  // namespace loopfluct
