#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "loopfluct/geometry.hpp"

namespace loopfluct {

/// Default cap on raster size. At h = T/256 a conditioned loop needs roughly 3e5 cells.
inline constexpr std::int64_t kDefaultMaxCells = 64LL * 1024 * 1024;

/// Integer window of the global lattice h*Z^2 covering a loop's bounding box with at
/// least two cells of padding on every side. Cell (i, j) covers
/// [(ix0 + i) h, (ix0 + i + 1) h) x [(iy0 + j) h, (iy0 + j + 1) h).
struct RasterWindow {
  double h = 0.0;
  std::int64_t ix0 = 0;
  std::int64_t iy0 = 0;
  std::int64_t nx = 0;
  std::int64_t ny = 0;

  std::int64_t cells() const { return nx * ny; }
  Point2 origin() const { return {static_cast<double>(ix0) * h, static_cast<double>(iy0) * h}; }
  Point2 cell_center(std::int64_t i, std::int64_t j) const {
    return {(static_cast<double>(ix0 + i) + 0.5) * h, (static_cast<double>(iy0 + j) + 0.5) * h};
  }
};

RasterWindow raster_window(std::span<const Point2> loop, double h, std::int64_t max_cells);

/// A run of curve cells in one raster row: columns [c0, c1] (window-relative, inclusive).
struct CurveRun {
  std::int32_t row;
  std::int32_t c0;
  std::int32_t c1;
};

/// Conservative rasterization of the closed polyline: every cell whose (closed) row slab
/// meets a segment is marked over the segment's column span in that slab.
void rasterize_curve(std::span<const Point2> loop, const RasterWindow& w, std::vector<CurveRun>& out);

/// Rasterized enclosed set: curve cells plus every cell not 4-connected to the padding
/// through non-curve cells.
class RasterRegion {
 public:
  RasterRegion(RasterWindow window, std::vector<std::uint8_t> mask);

  const RasterWindow& window() const { return window_; }
  Point2 origin() const { return window_.origin(); }
  double h() const { return window_.h; }
  std::int64_t nx() const { return window_.nx; }
  std::int64_t ny() const { return window_.ny; }
  std::int64_t cell_count() const { return cell_count_; }
  double area() const { return static_cast<double>(cell_count_) * window_.h * window_.h; }

  bool occupied(std::int64_t i, std::int64_t j) const { return mask_[j * window_.nx + i] != 0; }
  std::span<const std::uint8_t> mask() const { return mask_; }

  /// Centers of all occupied cells.
  std::vector<Point2> occupied_centers() const;

  /// Binary P5 grey-scale dump (255 = occupied), rows written top (max y) first.
  void write_pgm(std::ostream& os) const;
  /// {"origin":[x,y],"h":h,"dims":[nx,ny],"cell_count":c}
  std::string json_header() const;

 private:
  RasterWindow window_;
  std::vector<std::uint8_t> mask_;
  std::int64_t cell_count_ = 0;
};

/// Dense rasterization with breadth-first flood fill from the padding.
RasterRegion enclosed_region(std::span<const Point2> loop, double h,
                             std::int64_t max_cells = kDefaultMaxCells);

/// Cell count of enclosed_region computed by union-find over free row runs, without
/// materializing the grid. Yields the same cell set as enclosed_region.
class RunAreaEngine {
 public:
  std::int64_t cell_count(std::span<const Point2> loop, double h,
                          std::int64_t max_cells = kDefaultMaxCells);
  double area(std::span<const Point2> loop, double h, std::int64_t max_cells = kDefaultMaxCells) {
    return static_cast<double>(cell_count(loop, h, max_cells)) * h * h;
  }

 private:
  std::vector<CurveRun> runs_;
  std::vector<std::int32_t> row_start_;
  std::vector<CurveRun> sorted_;
  std::vector<std::int32_t> free_lo_, free_hi_, free_row_start_;
  std::vector<std::int32_t> parent_;
};

/// Convenience wrapper around a thread-local RunAreaEngine.
double enclosed_area(std::span<const Point2> loop, double h,
                     std::int64_t max_cells = kDefaultMaxCells);

/// Squared Euclidean distance (in cells) from each cell to the nearest unoccupied cell,
/// by the separable two-pass parabolic lower-envelope transform.
std::vector<double> squared_distance_to_complement(const RasterRegion& region);

/// Largest inscribed disk of the region: the occupied cell center farthest from any
/// unoccupied cell center, with radius equal to that distance.
Disk inradius(const RasterRegion& region);

}  // namespace loopfluct
