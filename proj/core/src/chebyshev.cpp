#include <limits>
#include <vector>

#include "loopfluct/geometry.hpp"

namespace loopfluct {

namespace {

// Dense tableau simplex for: maximize c^T x  s.t.  A x <= b, x >= 0, with b >= 0 so the
// slack basis is feasible. Bland's rule prevents cycling.
class SlackSimplex {
 public:
  SlackSimplex(std::size_t rows, std::size_t vars)
      : m_(rows), n_(vars), cols_(vars + rows + 1), t_((rows + 1) * cols_, 0.0), basis_(rows) {
    for (std::size_t i = 0; i < m_; ++i) {
      at(i, n_ + i) = 1.0;
      basis_[i] = n_ + i;
    }
  }

  double& a(std::size_t row, std::size_t var) { return at(row, var); }
  double& b(std::size_t row) { return at(row, cols_ - 1); }
  void objective(std::size_t var, double coeff) { at(m_, var) = -coeff; }

  std::vector<double> solve() {
    constexpr double eps = 1e-12;
    for (std::size_t iter = 0; iter < 50 * (m_ + n_); ++iter) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j + 1 < cols_; ++j) {
        if (at(m_, j) < -eps) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) break;
      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double coeff = at(i, enter);
        if (coeff > eps) {
          const double ratio = at(i, cols_ - 1) / coeff;
          if (ratio < best - eps || (ratio <= best + eps && leave < m_ && basis_[i] < basis_[leave])) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave == m_) fail(ErrorCode::DegenerateHull, "chebyshev_inradius_convex: unbounded LP");
      pivot(leave, enter);
    }
    std::vector<double> x(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = at(i, cols_ - 1);
    }
    return x;
  }

 private:
  double& at(std::size_t r, std::size_t c) { return t_[r * cols_ + c]; }

  void pivot(std::size_t row, std::size_t col) {
    const double p = at(row, col);
    for (std::size_t j = 0; j < cols_; ++j) at(row, j) /= p;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == row) continue;
      const double f = at(i, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) at(i, j) -= f * at(row, j);
    }
    basis_[row] = col;
  }

  std::size_t m_, n_, cols_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Disk chebyshev_inradius_convex(const ConvexPolygon& hull) {
  const auto& v = hull.vertices();
  const std::size_t k = v.size();
  Point2 g{};
  for (const Point2& p : v) g += p;
  g = (1.0 / static_cast<double>(k)) * g;

  // Variables: u = (x+, x-, y+, y-) offset from the vertex centroid, then r.
  SlackSimplex lp(k, 5);
  for (std::size_t e = 0; e < k; ++e) {
    const Segment s = hull.edge(e);
    const Point2 d = s.b - s.a;
    const double len = norm(d);
    const Point2 outward{d.y / len, -d.x / len};
    lp.a(e, 0) = outward.x;
    lp.a(e, 1) = -outward.x;
    lp.a(e, 2) = outward.y;
    lp.a(e, 3) = -outward.y;
    lp.a(e, 4) = 1.0;
    const double rhs = dot(outward, s.a - g);
    if (!(rhs > 0.0)) fail(ErrorCode::DegenerateHull, "chebyshev_inradius_convex: degenerate hull");
    lp.b(e) = rhs;
  }
  lp.objective(4, 1.0);
  const std::vector<double> x = lp.solve();
  const Point2 center = g + Point2{x[0] - x[1], x[2] - x[3]};
  return {center, std::max(0.0, hull.min_inner_distance(center))};
}

}  // namespace loopfluct
