#include "loopfluct/raster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

namespace loopfluct {

RasterWindow raster_window(std::span<const Point2> loop, double h, std::int64_t max_cells) {
  require(h > 0.0 && std::isfinite(h), "raster: cell size h must be positive");
  require(loop.size() >= 2, "raster: loop needs at least 2 points");
  double minx = loop[0].x, maxx = loop[0].x, miny = loop[0].y, maxy = loop[0].y;
  for (const Point2& p : loop) {
    require(is_finite(p), "raster: non-finite loop point");
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  const double fx0 = std::floor(minx / h) - 2.0;
  const double fx1 = std::floor(maxx / h) + 2.0;
  const double fy0 = std::floor(miny / h) - 2.0;
  const double fy1 = std::floor(maxy / h) + 2.0;
  const double cells = (fx1 - fx0 + 1.0) * (fy1 - fy0 + 1.0);
  if (!(cells <= static_cast<double>(max_cells)) || fx1 - fx0 + 1.0 > 2.0e9 ||
      fy1 - fy0 + 1.0 > 2.0e9) {
    std::ostringstream msg;
    msg << "raster: grid of " << cells << " cells exceeds the budget of " << max_cells;
    fail(ErrorCode::Resource, msg.str());
  }
  RasterWindow w;
  w.h = h;
  w.ix0 = static_cast<std::int64_t>(fx0);
  w.iy0 = static_cast<std::int64_t>(fy0);
  w.nx = static_cast<std::int64_t>(fx1 - fx0) + 1;
  w.ny = static_cast<std::int64_t>(fy1 - fy0) + 1;
  return w;
}

void rasterize_curve(std::span<const Point2> loop, const RasterWindow& w,
                     std::vector<CurveRun>& out) {
  const double inv_h = 1.0 / w.h;
  const double ox = static_cast<double>(w.ix0);
  const double oy = static_cast<double>(w.iy0);
  const std::size_t n = loop.size();
  for (std::size_t k = 0; k < n; ++k) {
    Point2 p = loop[k];
    Point2 q = loop[(k + 1) % n];
    p = {p.x * inv_h - ox, p.y * inv_h - oy};
    q = {q.x * inv_h - ox, q.y * inv_h - oy};
    if (q.y < p.y) std::swap(p, q);
    const auto r0 = static_cast<std::int32_t>(std::floor(p.y));
    const auto r1 = static_cast<std::int32_t>(std::floor(q.y));
    if (r0 == r1) {
      const auto c0 = static_cast<std::int32_t>(std::floor(std::min(p.x, q.x)));
      const auto c1 = static_cast<std::int32_t>(std::floor(std::max(p.x, q.x)));
      out.push_back({r0, c0, c1});
      continue;
    }
    const double slope = (q.x - p.x) / (q.y - p.y);
    // x at the slab boundary y; endpoints are used verbatim so adjacent segments agree.
    auto x_at = [&](double y) {
      if (y <= p.y) return p.x;
      if (y >= q.y) return q.x;
      return p.x + (y - p.y) * slope;
    };
    for (std::int32_t r = r0; r <= r1; ++r) {
      const double xa = x_at(static_cast<double>(r));
      const double xb = x_at(static_cast<double>(r) + 1.0);
      const auto c0 = static_cast<std::int32_t>(std::floor(std::min(xa, xb)));
      const auto c1 = static_cast<std::int32_t>(std::floor(std::max(xa, xb)));
      out.push_back({r, c0, c1});
    }
  }
}

RasterRegion::RasterRegion(RasterWindow window, std::vector<std::uint8_t> mask)
    : window_(window), mask_(std::move(mask)) {
  require(window_.h > 0.0, "RasterRegion: h must be positive");
  require(static_cast<std::int64_t>(mask_.size()) == window_.cells(),
          "RasterRegion: mask size does not match dimensions");
  cell_count_ = std::count_if(mask_.begin(), mask_.end(), [](std::uint8_t v) { return v != 0; });
}

std::vector<Point2> RasterRegion::occupied_centers() const {
  std::vector<Point2> out;
  out.reserve(static_cast<std::size_t>(cell_count_));
  for (std::int64_t j = 0; j < window_.ny; ++j) {
    for (std::int64_t i = 0; i < window_.nx; ++i) {
      if (occupied(i, j)) out.push_back(window_.cell_center(i, j));
    }
  }
  return out;
}

void RasterRegion::write_pgm(std::ostream& os) const {
  os << "P5\n" << window_.nx << ' ' << window_.ny << "\n255\n";
  std::vector<char> row(static_cast<std::size_t>(window_.nx));
  for (std::int64_t j = window_.ny; j-- > 0;) {
    for (std::int64_t i = 0; i < window_.nx; ++i) {
      row[static_cast<std::size_t>(i)] = occupied(i, j) ? static_cast<char>(255) : 0;
    }
    os.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
}

std::string RasterRegion::json_header() const {
  std::ostringstream os;
  os.precision(17);
  const Point2 o = origin();
  os << "{\"origin\":[" << o.x << ',' << o.y << "],\"h\":" << window_.h << ",\"dims\":["
     << window_.nx << ',' << window_.ny << "],\"cell_count\":" << cell_count_ << '}';
  return os.str();
}

RasterRegion enclosed_region(std::span<const Point2> loop, double h, std::int64_t max_cells) {
  const RasterWindow w = raster_window(loop, h, max_cells);
  std::vector<CurveRun> runs;
  rasterize_curve(loop, w, runs);

  constexpr std::uint8_t kFree = 0, kCurve = 2, kOutside = 1;
  const std::int64_t nx = w.nx, ny = w.ny;
  std::vector<std::uint8_t> grid(static_cast<std::size_t>(w.cells()), kFree);
  for (const CurveRun& r : runs) {
    std::fill(grid.begin() + r.row * nx + r.c0, grid.begin() + r.row * nx + r.c1 + 1, kCurve);
  }

  std::vector<std::int64_t> stack;
  auto seed = [&](std::int64_t idx) {
    if (grid[idx] == kFree) {
      grid[idx] = kOutside;
      stack.push_back(idx);
    }
  };
  for (std::int64_t i = 0; i < nx; ++i) {
    seed(i);
    seed((ny - 1) * nx + i);
  }
  for (std::int64_t j = 0; j < ny; ++j) {
    seed(j * nx);
    seed(j * nx + nx - 1);
  }
  while (!stack.empty()) {
    const std::int64_t idx = stack.back();
    stack.pop_back();
    const std::int64_t i = idx % nx;
    const std::int64_t j = idx / nx;
    if (i > 0) seed(idx - 1);
    if (i + 1 < nx) seed(idx + 1);
    if (j > 0) seed(idx - nx);
    if (j + 1 < ny) seed(idx + nx);
  }
  for (auto& v : grid) v = (v == kOutside) ? 0 : 1;
  return RasterRegion(w, std::move(grid));
}

std::int64_t RunAreaEngine::cell_count(std::span<const Point2> loop, double h,
                                       std::int64_t max_cells) {
  const RasterWindow w = raster_window(loop, h, max_cells);
  const auto nx = static_cast<std::int32_t>(w.nx);
  const auto ny = static_cast<std::int32_t>(w.ny);

  runs_.clear();
  rasterize_curve(loop, w, runs_);

  // Counting sort of curve runs by row.
  row_start_.assign(static_cast<std::size_t>(ny) + 1, 0);
  for (const CurveRun& r : runs_) ++row_start_[r.row + 1];
  std::partial_sum(row_start_.begin(), row_start_.end(), row_start_.begin());
  sorted_.resize(runs_.size());
  {
    std::vector<std::int32_t>& cursor = parent_;
    cursor.assign(row_start_.begin(), row_start_.end() - 1);
    for (const CurveRun& r : runs_) sorted_[cursor[r.row]++] = r;
  }

  // Free (non-curve) intervals per row.
  free_lo_.clear();
  free_hi_.clear();
  free_row_start_.assign(static_cast<std::size_t>(ny) + 1, 0);
  for (std::int32_t row = 0; row < ny; ++row) {
    auto first = sorted_.begin() + row_start_[row];
    auto last = sorted_.begin() + row_start_[row + 1];
    std::sort(first, last, [](const CurveRun& a, const CurveRun& b) { return a.c0 < b.c0; });
    std::int32_t next_free = 0;
    for (auto it = first; it != last; ++it) {
      if (it->c0 > next_free) {
        free_lo_.push_back(next_free);
        free_hi_.push_back(it->c0 - 1);
      }
      next_free = std::max(next_free, it->c1 + 1);
    }
    if (next_free < nx) {
      free_lo_.push_back(next_free);
      free_hi_.push_back(nx - 1);
    }
    free_row_start_[row + 1] = static_cast<std::int32_t>(free_lo_.size());
  }

  const auto count = static_cast<std::int32_t>(free_lo_.size());
  parent_.resize(static_cast<std::size_t>(count));
  std::iota(parent_.begin(), parent_.end(), 0);
  auto find = [&](std::int32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  };
  auto unite = [&](std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  };
  for (std::int32_t row = 1; row < ny; ++row) {
    std::int32_t a = free_row_start_[row - 1];
    const std::int32_t a_end = free_row_start_[row];
    std::int32_t b = free_row_start_[row];
    const std::int32_t b_end = free_row_start_[row + 1];
    while (a < a_end && b < b_end) {
      if (free_lo_[a] <= free_hi_[b] && free_lo_[b] <= free_hi_[a]) unite(a, b);
      if (free_hi_[a] < free_hi_[b]) {
        ++a;
      } else {
        ++b;
      }
    }
  }
  // Row 0 is padding, so interval 0 belongs to the unbounded component.
  const std::int32_t outside = find(0);
  std::int64_t outside_cells = 0;
  for (std::int32_t k = 0; k < count; ++k) {
    if (find(k) == outside) outside_cells += free_hi_[k] - free_lo_[k] + 1;
  }
  return w.cells() - outside_cells;
}

double enclosed_area(std::span<const Point2> loop, double h, std::int64_t max_cells) {
  thread_local RunAreaEngine engine;
  return engine.area(loop, h, max_cells);
}

}  // namespace loopfluct
