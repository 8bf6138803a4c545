#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "loopfluct/stats.hpp"
#include "loopfluct/verify.hpp"

namespace loopfluct::verify {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(CheckReport, JsonLineHasAllFields) {
  CheckReport r{"demo", true, 0.25, 1.0, 10, 7, "a=1"};
  const auto j = nlohmann::json::parse(r.to_json());
  EXPECT_EQ(j["name"], "demo");
  EXPECT_EQ(j["passed"], true);
  EXPECT_DOUBLE_EQ(j["statistic"].get<double>(), 0.25);
  EXPECT_EQ(j["samples"], 10);
  EXPECT_EQ(j["seed"], 7);
  EXPECT_EQ(j["details"], "a=1");
  EXPECT_EQ(r.to_json().find('\n'), std::string::npos);
  r.threshold = INFINITY;
  EXPECT_TRUE(nlohmann::json::parse(r.to_json())["threshold"].is_null());
}

TEST(ShiftedSquareTail, KnownValues) {
  EXPECT_EQ(shifted_square_tail(10.0, 20.0, 1.0), 1.0);
  EXPECT_NEAR(shifted_square_tail(21.0, 20.0, 1.0), 2 * 0.15865525393145705, 1e-15);
  EXPECT_NEAR(shifted_square_tail(2 * 4.0 + 4.0 * 4.0, 2.0, 4.0), 2 * 0.022750131948179209, 1e-15);
}

TEST(WindowDisplacementBound, FormulaAndLimits) {
  EXPECT_TRUE(std::isinf(window_displacement_bound(1, 0.1, 0.0)));
  const double T = 4, f = 0.5, g = 3;
  const double expected = (32 * std::sqrt(2.0) * T / (std::sqrt(kPi) * std::sqrt(f) * g) +
                           16 * std::sqrt(T) / (std::sqrt(kPi) * g)) *
                          std::exp(-g * g / (128 * f));
  EXPECT_NEAR(window_displacement_bound(T, f, g), expected, 1e-14 * expected);
  // At f = 1/64, g = 1 the bound exceeds one; it only bites once g^2 / (128 f) is large.
  EXPECT_GT(window_displacement_bound(1, 1.0 / 64, 1), 1.0);
  EXPECT_LT(window_displacement_bound(1, 1.0 / 64, 5), 1e-3);
}

TEST(BridgeMaxLaw, FineGridPassesAndMatchesTailAtHalfVariance) {
  RngStream rng(81, 0);
  const CheckReport r = check_bridge_max_law(1.0, 4096, 20000, rng);
  EXPECT_TRUE(r.passed) << r.details;
  EXPECT_EQ(r.samples, 20000);
  const auto pos = r.details.find("p_above_sqrt_T_over_2=");
  ASSERT_NE(pos, std::string::npos);
  const double p = std::stod(r.details.substr(pos + 22));
  EXPECT_NEAR(p, std::exp(-1.0), 0.015);
}

TEST(BridgeMaxLaw, SingleInteriorPointIsBiased) {
  RngStream rng(82, 0);
  const CheckReport r = check_bridge_max_law(1.0, 2, 10000, rng);
  // Half the draws are exactly zero, so the distance is at least about one half.
  EXPECT_GT(r.statistic, 0.4);
  EXPECT_GT(r.statistic, 0.015);
}

TEST(SupDominance, PassesOnModestSample) {
  RngStream rng(83, 0);
  const CheckReport r = check_sup_dominance(1.0, 512, 5000, rng);
  EXPECT_TRUE(r.passed) << r.details;
  EXPECT_LE(r.statistic, 0.0);
}

TEST(IncrementChi2, PassesForFreeLoops) {
  RngStream rng(84, 0);
  const CheckReport r = check_increment_chi2(2.0, 256, 16, 4000, rng, 0.03);
  EXPECT_TRUE(r.passed) << r.statistic;
}

TEST(IncrementChi2, WrongDegreesOfFreedomDetected) {
  // Unscaled time: using T = 1 in normalization for loops of duration 2 doubles every E^2.
  RngStream rng(85, 0);
  std::vector<double> sums;
  for (int k = 0; k < 2000; ++k) {
    const LoopPath loop = sample_loop(TimeGrid(2.0, 64), rng);
    double s = 0;
    for (double e : normalized_increments(polygonal_approx(loop, 8), 1.0)) s += e * e;
    sums.push_back(s);
  }
  EXPECT_GT(ks_distance(sums, [](double x) { return chi2_cdf(x, 14); }), 0.2);
}

TEST(Containment, ConvexLoopHasNoCellsOutsideHullBand) {
  std::vector<Point2> pts;
  const int n = 256;
  for (int i = 0; i < n; ++i) {
    const double a = 2 * kPi * i / n;
    pts.push_back({std::cos(a) - 1, std::sin(a)});
  }
  pts[0] = {0, 0};
  const CheckReport r = check_containment(LoopPath(TimeGrid(1.0, n), pts), 16, 1.0 / 128);
  EXPECT_TRUE(r.passed) << r.details;
  EXPECT_LE(r.statistic, r.threshold);
}

TEST(Containment, RandomLoopsPass) {
  RngStream rng(86, 0);
  for (int k = 0; k < 20; ++k) {
    const LoopPath loop = sample_loop(TimeGrid(1.0, 256), rng);
    for (int m : {8, 16}) {
      const CheckReport r = check_containment(loop, m, 1.0 / 128, k % 2 ? 1.0 / (2 * m) : 0.0);
      EXPECT_TRUE(r.passed) << r.details;
    }
  }
}

TEST(Containment, SpiralLoopPasses) {
  // Winds outward three times, then returns along a straight spoke.
  const int n = 512;
  std::vector<Point2> pts(n);
  for (int i = 1; i < 448; ++i) {
    const double s = i / 448.0;
    const double a = 6 * kPi * s;
    pts[i] = {s * std::cos(a), s * std::sin(a)};
  }
  for (int i = 448; i < n; ++i) pts[i] = (double(n - i) / (n - 447)) * pts[447];
  const LoopPath loop(TimeGrid(1.0, n), pts);
  for (int m : {8, 16, 32}) {
    const CheckReport r = check_containment(loop, m, 1.0 / 256);
    EXPECT_TRUE(r.passed) << r.details;
  }
}

TEST(Containment, RequiresDivisibleVertexCount) {
  RngStream rng(87, 0);
  const LoopPath loop = sample_loop(TimeGrid(1.0, 100), rng);
  EXPECT_THROW(check_containment(loop, 8, 0.01), Error);
}

TEST(Bonnesen, RectangleTwoByOne) {
  const ConvexPolygon rect({{0, 0}, {2, 0}, {2, 1}, {0, 1}});
  const CheckReport r = check_bonnesen(rect);
  const double rhs = 8 * kPi + kPi * kPi * std::pow(std::sqrt(5.0) / 2 - 0.5, 2);
  EXPECT_NEAR(rhs, 28.9, 0.01);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.statistic, (36 - rhs) / 36, 1e-12);
}

TEST(Bonnesen, DiskApproximationIsNearEquality) {
  std::vector<Point2> v;
  for (int i = 0; i < 1024; ++i) v.push_back({std::cos(2 * kPi * i / 1024), std::sin(2 * kPi * i / 1024)});
  const CheckReport r = check_bonnesen(ConvexPolygon(v));
  EXPECT_TRUE(r.passed);
  EXPECT_GE(r.statistic, 0.0);
  EXPECT_LT(r.statistic, 1e-3);
}

TEST(PolygonArclength, ConvexPolygonIsEquality) {
  const std::vector<Point2> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const CheckReport r = check_polygon_arclength(sq);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.statistic, 0.0, 1e-15);
}

TEST(PolygonArclength, SquareWithPushedEdgeMidpoint) {
  for (int k = 1; k <= 9; ++k) {
    const double d = 0.1 * k;
    const std::vector<Point2> poly{{0, 0}, {0.5, d}, {1, 0}, {1, 1}, {0, 1}};
    const CheckReport r = check_polygon_arclength(poly);
    const double R = std::min({d, 0.5, 1 - d});
    const double lhs = 3 + 2 * std::sqrt(0.25 + d * d);
    const double rhs = 4 + (std::sqrt(5.0) - 2) * std::min(2 * R * R, R);
    EXPECT_TRUE(r.passed) << "d=" << d;
    EXPECT_NEAR(r.statistic, lhs - rhs, 1e-12) << "d=" << d;
  }
}

TEST(PolygonArclength, SelfIntersectingPolygonRejected) {
  const std::vector<Point2> bowtie{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  try {
    check_polygon_arclength(bowtie);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidInput);
  }
}

TEST(IsoperimetricChain, RegularPolygonTightensOnlyLastStep) {
  std::vector<Point2> v;
  for (int i = 0; i < 12; ++i) v.push_back({std::cos(2 * kPi * i / 12), std::sin(2 * kPi * i / 12)});
  const CheckReport r = check_isoperimetric_chain(v);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.statistic, 0.0, 1e-12);
}

TEST(FacetBound, VacuousAndActiveCases) {
  const ConvexPolygon sq({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  ObservableRecord rec;
  rec.r_in = 0.4;
  rec.r_out = 1.0;
  rec.h = 0.01;
  CheckReport r = check_facet_bound(rec, sq);
  EXPECT_TRUE(r.passed);
  EXPECT_NE(r.details.find("vacuous=1"), std::string::npos);

  rec.r_in = 1.0;
  rec.r_out = std::sqrt(2.0);
  rec.h = 1e-12;
  r = check_facet_bound(rec, sq);
  // Facet 2 against 4 sqrt(sqrt 2 - 1) = 2.57.
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.statistic, 2 - 4 * std::sqrt(std::sqrt(2.0) - 1), 1e-12);

  // Claimed radii too close for this facet: the bound must fail.
  rec.r_in = 1.0;
  rec.r_out = 1.01;
  r = check_facet_bound(rec, sq);
  EXPECT_FALSE(r.passed);
}

TEST(FacetBound, ExtremalConfigurationReproduced) {
  const CheckReport r = check_facet_extremal();
  EXPECT_TRUE(r.passed) << r.details;
  EXPECT_LT(r.statistic, 1e-9);
}

TEST(RateFunctional, CircleCoefficients) {
  for (double phase : {0.0, 1.0, 2.5}) {
    const std::complex<double> a = std::polar(1.0, phase);
    const std::vector<FourierMode> modes{{0, -a}, {1, a}};
    const RateFunctional rf = rate_functional(modes);
    EXPECT_NEAR(rf.I, 2 * kPi * kPi, 1e-12 * rf.I);
    EXPECT_NEAR(rf.A, kPi, 1e-12 * kPi);
    EXPECT_NEAR(rf.shoelace_A, kPi, 1e-6 * kPi);
    const CheckReport r = check_rate_functional(modes);
    EXPECT_TRUE(r.passed) << r.details;
  }
}

TEST(RateFunctional, DoubleWindingMode) {
  const std::vector<FourierMode> modes{{2, 1.0}};
  const RateFunctional rf = rate_functional(modes);
  EXPECT_NEAR(rf.I, 8 * kPi * kPi, 1e-12);
  EXPECT_NEAR(rf.A, 2 * kPi, 1e-12);
  EXPECT_GT(rf.I, 2 * kPi * rf.A);
  // Already at mode 2 the 4096-point shoelace misses A by about 4e-6 relative.
  const double x = 4 * kPi / 4096;
  EXPECT_NEAR((rf.A - rf.shoelace_A) / rf.A, 1 - std::sin(x) / x, 1e-12);
  const CheckReport r = check_rate_functional(modes);
  EXPECT_FALSE(r.passed);
  EXPECT_LT(r.statistic, 1e-5);
}

TEST(RateFunctional, ShoelaceErrorGrowsWithFrequency) {
  // The 4096-point polygon loses area like (2 pi n / 4096)^2 / 6 on mode n.
  const std::vector<FourierMode> modes{{32, 1.0}};
  const RateFunctional rf = rate_functional(modes);
  const double rel = (rf.A - rf.shoelace_A) / rf.A;
  const double x = 2 * kPi * 32 / 4096;
  EXPECT_NEAR(rel, 1 - std::sin(x) / x, 1e-12);
  EXPECT_FALSE(check_rate_functional(modes).passed);
}

TEST(RateFunctional, NegativeModesSkipInequality) {
  // A clockwise circle has negative area; the inequality is not asserted.
  const std::vector<FourierMode> modes{{-1, 1.0}};
  const RateFunctional rf = rate_functional(modes);
  EXPECT_NEAR(rf.A, -kPi, 1e-12);
  EXPECT_NEAR(rf.shoelace_A, -kPi, 1e-5);
  EXPECT_NE(check_rate_functional(modes).details.find("positive_modes_only=0"), std::string::npos);
}

TEST(QEvent, ZeroDisplacementAlwaysHappens) {
  RngStream rng(88, 0);
  const CheckReport r = check_q_event(1.0, 256, 200, 1.0 / 64, 0.0, rng);
  EXPECT_DOUBLE_EQ(r.statistic, 1.0);
  EXPECT_TRUE(r.passed);
}

TEST(QEvent, SmallDisplacementIsVacuous) {
  RngStream rng(89, 0);
  const CheckReport r = check_q_event(1.0, 256, 200, 1.0 / 64, 0.05, rng);
  EXPECT_TRUE(r.passed);
  EXPECT_NE(r.details.find("vacuous=1"), std::string::npos);
}

TEST(QEvent, LargeDisplacementIsRare) {
  RngStream rng(90, 0);
  const CheckReport r = check_q_event(1.0, 1024, 2000, 1.0 / 64, 1.0, rng);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.statistic, 0.0);
}

TEST(QEvent, WindowScanMatchesBruteForce) {
  // g chosen so that roughly half the loops have a qualifying window.
  const double T = 1.0, f = 0.1;
  const std::int64_t n = 64;
  const auto w = static_cast<std::int64_t>(std::floor(f / (T / n) + 1e-9));
  RngStream rng(91, 0), replay(91, 0);
  const double g = 1.0;
  const CheckReport r = check_q_event(T, n, 300, f, g, rng);
  std::int64_t hits = 0;
  for (int k = 0; k < 300; ++k) {
    const LoopPath loop = sample_loop(TimeGrid(T, n), replay);
    bool hit = false;
    for (std::int64_t a = 0; a < n && !hit; ++a) {
      for (std::int64_t b = a + 1; b <= a + w && !hit; ++b) hit = distance(loop[a], loop[b]) > g;
    }
    hits += hit;
  }
  EXPECT_DOUBLE_EQ(r.statistic, hits / 300.0);
  EXPECT_GT(hits, 10);
  EXPECT_LT(hits, 295);
}

TEST(QEvent, RejectsWindowLongerThanLoop) {
  RngStream rng(92, 0);
  EXPECT_THROW(check_q_event(1.0, 64, 10, 1.5, 1.0, rng), Error);
  EXPECT_THROW(check_q_event(1.0, 64, 10, 0.0, 1.0, rng), Error);
}

TEST(Fuzz, ExactInequalitiesHaveNoViolations) {
  for (const CheckReport& r : {fuzz_bonnesen(200, 3), fuzz_polygon_arclength(200, 3),
                               fuzz_isoperimetric_chain(200, 3), fuzz_facet_bound(100, 3),
                               fuzz_rate_functional(200, 3)}) {
    EXPECT_TRUE(r.passed) << r.name << ": " << r.details;
    EXPECT_EQ(r.statistic, 0.0);
  }
}

TEST(Suite, SelectorHandling) {
  const auto reports = run_suite("bonnesen", 5);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(reports[0].name, "bonnesen");
  const auto two = run_suite("facet_extremal,bonnesen", 5);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].name, "facet_extremal");
  EXPECT_EQ(two[1].to_json(), reports[0].to_json());
  EXPECT_THROW(run_suite("nonsense", 5), Error);
  EXPECT_THROW(run_suite("bonnesen,", 5), Error);
  EXPECT_THROW(run_suite("", 5), Error);
  EXPECT_EQ(suite_check_names().front(), "bridge_max_law");
}

}  // namespace
}  // namespace loopfluct::verify
