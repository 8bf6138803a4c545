#include <algorithm>
#include <cstdint>
#include <list>

#include "loopfluct/geometry.hpp"

namespace loopfluct {

namespace {

Disk circle_from(Point2 a) { return {a, 0.0}; }

Disk circle_from(Point2 a, Point2 b) {
  const Point2 c = 0.5 * (a + b);
  return {c, std::max(distance(c, a), distance(c, b))};
}

Disk circle_from(Point2 a, Point2 b, Point2 c) {
  const Point2 ab = b - a;
  const Point2 ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  const double scale = std::max({dot(ab, ab), dot(ac, ac), dot(c - b, c - b)});
  if (std::abs(d) <= 1e-14 * scale) {
    // Collinear: the circle over the farthest pair covers all three.
    Disk best = circle_from(a, b);
    for (const Disk& cand : {circle_from(a, c), circle_from(b, c)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  const double ab2 = dot(ab, ab);
  const double ac2 = dot(ac, ac);
  const Point2 off{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
  const Point2 center = a + off;
  return {center, std::max({distance(center, a), distance(center, b), distance(center, c)})};
}

bool covers(const Disk& disk, Point2 p) {
  return distance(p, disk.center) <= disk.radius * (1.0 + 1e-12) + 1e-300;
}

class MoveToFront {
 public:
  explicit MoveToFront(std::list<Point2> pts) : pts_(std::move(pts)) {}

  Disk solve() {
    boundary_.clear();
    recurse(pts_.end());
    return disk_;
  }

 private:
  void recurse(std::list<Point2>::iterator end) {
    switch (boundary_.size()) {
      case 0: disk_ = {pts_.front(), -1.0}; break;
      case 1: disk_ = circle_from(boundary_[0]); break;
      case 2: disk_ = circle_from(boundary_[0], boundary_[1]); break;
      default: disk_ = circle_from(boundary_[0], boundary_[1], boundary_[2]); return;
    }
    for (auto it = pts_.begin(); it != end;) {
      auto next = std::next(it);
      if (disk_.radius < 0.0 || !covers(disk_, *it)) {
        boundary_.push_back(*it);
        recurse(it);
        boundary_.pop_back();
        pts_.splice(pts_.begin(), pts_, it);
      }
      it = next;
    }
  }

  std::list<Point2> pts_;
  std::vector<Point2> boundary_;
  Disk disk_;
};

}  // namespace

Disk outradius(std::span<const Point2> points) {
  require(!points.empty(), "outradius: empty point set");
  std::vector<Point2> p(points.begin(), points.end());
  for (const Point2& q : p) require(is_finite(q), "outradius: non-finite point");

  // Fixed-seed Fisher-Yates keeps the result reproducible across platforms.
  std::uint64_t state = 0x9E3779B97F4A7C15ULL;
  for (std::size_t i = p.size(); i > 1; --i) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    std::swap(p[i - 1], p[z % i]);
  }

  MoveToFront solver(std::list<Point2>(p.begin(), p.end()));
  Disk disk = solver.solve();
  if (disk.radius < 0.0) disk.radius = 0.0;
  for (const Point2& q : p) disk.radius = std::max(disk.radius, distance(q, disk.center));
  return disk;
}

}  // namespace loopfluct
