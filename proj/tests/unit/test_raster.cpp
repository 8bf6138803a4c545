#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "loopfluct/raster.hpp"
#include "loopfluct/sampler.hpp"
#include "oracles.hpp"

namespace loopfluct {
namespace {

std::vector<Point2> circle(int k, double r, Point2 c = {}) { return oracle::regular_polygon(k, r, c); }

std::vector<Point2> square(double side, Point2 c = {}) {
  const double s = side / 2;
  return {c + Point2{-s, -s}, c + Point2{s, -s}, c + Point2{s, s}, c + Point2{-s, s}};
}

TEST(RasterWindow, AnchoredToLatticeWithPadding) {
  const std::vector<Point2> pts{{0.3, -0.2}, {1.7, 0.9}, {0.1, 0.4}};
  const double h = 0.25;
  const RasterWindow w = raster_window(pts, h, kDefaultMaxCells);
  EXPECT_LE(w.origin().x, 0.1 - 2 * h + 1e-12);
  EXPECT_LE(w.origin().y, -0.2 - 2 * h + 1e-12);
  EXPECT_GE(w.origin().x + w.nx * h, 1.7 + 2 * h - 1e-12);
  EXPECT_GE(w.origin().y + w.ny * h, 0.9 + 2 * h - 1e-12);
  EXPECT_DOUBLE_EQ(w.cell_center(0, 0).x, (w.ix0 + 0.5) * h);
}

TEST(RasterWindow, ResourceLimitAndInputErrors) {
  const std::vector<Point2> pts{{0, 0}, {100, 0}, {0, 100}};
  try {
    raster_window(pts, 0.01, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Resource);
  }
  EXPECT_THROW(raster_window(pts, 0.0, kDefaultMaxCells), Error);
  EXPECT_THROW(raster_window(pts, -1.0, kDefaultMaxCells), Error);
  const std::vector<Point2> bad{{0, 0}, {INFINITY, 0}};
  EXPECT_THROW(raster_window(bad, 0.1, kDefaultMaxCells), Error);
}

TEST(EnclosedRegion, DiskAreaWithinTwoPercent) {
  const RasterRegion r = enclosed_region(circle(1000, 1.0), 1.0 / 64);
  EXPECT_NEAR(r.area(), std::numbers::pi, 0.02 * std::numbers::pi);
}

TEST(EnclosedRegion, FigureEightCountsBothLobes) {
  const std::vector<Point2> eight{{-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
  EXPECT_NEAR(signed_area(eight), 0.0, 1e-15);
  const double h = 1.0 / 128;
  const RasterRegion r = enclosed_region(eight, h);
  // Curve length is 4 + 4 sqrt 2; conservative marking adds at most about h per unit length.
  EXPECT_NEAR(r.area(), 2.0, 3 * h * (4 + 4 * std::sqrt(2.0)));
}

TEST(EnclosedRegion, SimplePolygonAreaWithinPerimeterBand) {
  RngStream rng(21, 0);
  for (int t = 0; t < 20; ++t) {
    // Star-shaped polygon around the origin.
    std::vector<Point2> poly;
    const int k = 12;
    for (int i = 0; i < k; ++i) {
      const double a = 2 * std::numbers::pi * i / k;
      const double rad = 0.5 + rng.uniform();
      poly.push_back({rad * std::cos(a), rad * std::sin(a)});
    }
    const double h = 1.0 / 100;
    const double L = polyline_length(poly, true);
    EXPECT_NEAR(enclosed_region(poly, h).area(), signed_area(poly), 3 * h * L);
  }
}

TEST(EnclosedRegion, ConservativeCoverContainsPolygon) {
  const auto poly = square(1.0, {0.013, 0.007});
  const double h = 1.0 / 32;
  const RasterRegion r = enclosed_region(poly, h);
  EXPECT_GE(r.area(), 1.0);
  EXPECT_LE(r.area(), (1 + 2 * h) * (1 + 2 * h) + 1e-12);
}

TEST(EnclosedRegion, AreaConvergesUnderRefinement) {
  const auto disk = circle(2000, 1.0, {0.1234, -0.0567});
  double previous_error = INFINITY;
  for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128}) {
    const double err = std::abs(enclosed_region(disk, h).area() - signed_area(disk));
    EXPECT_LT(err, previous_error);
    previous_error = err;
  }
  EXPECT_LT(previous_error, 0.1);
}

TEST(RunAreaEngine, MatchesDenseFloodFill) {
  RngStream rng(22, 0);
  RunAreaEngine engine;
  for (int t = 0; t < 40; ++t) {
    const LoopPath loop = sample_loop(TimeGrid(1.0, 64 + 16 * t), rng);
    const std::vector<Point2> pts(loop.points().begin(), loop.points().end());
    for (double h : {1.0 / 64, 1.0 / 256}) {
      EXPECT_EQ(engine.cell_count(pts, h), enclosed_region(pts, h).cell_count());
    }
  }
}

TEST(RunAreaEngine, MatchesOnAxisAlignedAndDegenerateCurves) {
  RunAreaEngine engine;
  const double h = 0.25;
  // Vertices and edges sitting exactly on cell boundaries.
  const std::vector<Point2> grid_square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  EXPECT_EQ(engine.cell_count(grid_square, h), enclosed_region(grid_square, h).cell_count());
  const std::vector<Point2> back_and_forth{{0, 0}, {1, 0.5}};
  EXPECT_EQ(engine.cell_count(back_and_forth, h), enclosed_region(back_and_forth, h).cell_count());
  const std::vector<Point2> spiral{{0, 0}, {2, 0}, {2, 2}, {-1, 2}, {-1, -1}, {1, -1}, {1, 1}, {0, 1}};
  EXPECT_EQ(engine.cell_count(spiral, h), enclosed_region(spiral, h).cell_count());
  EXPECT_DOUBLE_EQ(enclosed_area(spiral, h), enclosed_region(spiral, h).area());
}

TEST(RasterRegion, PgmAndJsonHeader) {
  const RasterRegion r = enclosed_region(square(1.0), 0.25);
  std::ostringstream pgm;
  r.write_pgm(pgm);
  const std::string bytes = pgm.str();
  const std::string head = "P5\n" + std::to_string(r.nx()) + " " + std::to_string(r.ny()) + "\n255\n";
  ASSERT_EQ(bytes.substr(0, head.size()), head);
  EXPECT_EQ(bytes.size(), head.size() + static_cast<std::size_t>(r.nx() * r.ny()));
  std::int64_t on = 0;
  for (std::size_t i = head.size(); i < bytes.size(); ++i) on += bytes[i] != 0;
  EXPECT_EQ(on, r.cell_count());

  const auto j = nlohmann::json::parse(r.json_header());
  EXPECT_DOUBLE_EQ(j["h"].get<double>(), 0.25);
  EXPECT_EQ(j["dims"][0].get<std::int64_t>(), r.nx());
  EXPECT_EQ(j["dims"][1].get<std::int64_t>(), r.ny());
  EXPECT_EQ(j["cell_count"].get<std::int64_t>(), r.cell_count());
  EXPECT_DOUBLE_EQ(j["origin"][0].get<double>(), r.origin().x);
}

TEST(RasterRegion, OccupiedCentersAreInsideCells) {
  const RasterRegion r = enclosed_region(square(1.0), 0.125);
  const auto centers = r.occupied_centers();
  EXPECT_EQ(static_cast<std::int64_t>(centers.size()), r.cell_count());
  for (const Point2& c : centers) {
    const auto i = static_cast<std::int64_t>(std::floor((c.x - r.origin().x) / r.h()));
    const auto j = static_cast<std::int64_t>(std::floor((c.y - r.origin().y) / r.h()));
    EXPECT_TRUE(r.occupied(i, j));
  }
}

TEST(RasterRegion, RejectsMismatchedMask) {
  RasterWindow w{0.5, 0, 0, 3, 3};
  EXPECT_THROW(RasterRegion(w, std::vector<std::uint8_t>(8)), Error);
}

TEST(Inradius, SquareOfSideTwo) {
  for (double h : {1.0 / 16, 1.0 / 64}) {
    const Disk d = inradius(enclosed_region(square(2.0, {0.01, 0.02}), h));
    EXPECT_NEAR(d.radius, 1.0, h * std::sqrt(2.0));
    EXPECT_NEAR(d.center.x, 0.01, 2 * h);
  }
}

TEST(Inradius, DiskOfRadiusR) {
  for (double R : {0.5, 1.0, 3.0}) {
    const double h = R / 50;
    const Disk d = inradius(enclosed_region(circle(2000, R, {0.3, -0.1}), h));
    EXPECT_NEAR(d.radius, R, h * std::sqrt(2.0));
    EXPECT_LE(distance(d.center, {0.3, -0.1}), 2 * h);
  }
}

TEST(Inradius, RefinementHalvesError) {
  const auto disk = circle(4000, 1.0, {0.037, 0.011});
  const double coarse = std::abs(inradius(enclosed_region(disk, 1.0 / 16)).radius - 1.0);
  const double fine = std::abs(inradius(enclosed_region(disk, 1.0 / 64)).radius - 1.0);
  EXPECT_LE(fine, std::max(coarse / 2, 1.0 / 64 * std::sqrt(2.0)));
}

TEST(Inradius, EmptyRegionThrows) {
  RasterWindow w{0.5, 0, 0, 4, 4};
  try {
    inradius(RasterRegion(w, std::vector<std::uint8_t>(16)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyRegion);
  }
}

TEST(DistanceTransform, MatchesBruteForce) {
  const RasterRegion r = enclosed_region(circle(7, 1.0), 0.1);
  const auto d2 = squared_distance_to_complement(r);
  for (std::int64_t j = 0; j < r.ny(); ++j) {
    for (std::int64_t i = 0; i < r.nx(); ++i) {
      double best = INFINITY;
      for (std::int64_t b = 0; b < r.ny(); ++b) {
        for (std::int64_t a = 0; a < r.nx(); ++a) {
          if (!r.occupied(a, b)) best = std::min(best, double((a - i) * (a - i) + (b - j) * (b - j)));
        }
      }
      EXPECT_DOUBLE_EQ(d2[j * r.nx() + i], best);
    }
  }
}

}  // namespace
}  // namespace loopfluct
