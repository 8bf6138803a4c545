#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "loopfluct/geometry.hpp"
#include "loopfluct/observables.hpp"
#include "loopfluct/rng.hpp"
#include "loopfluct/sampler.hpp"

namespace loopfluct::verify {

struct CheckReport {
  std::string name;
  bool passed = false;
  double statistic = 0.0;
  double threshold = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  std::string details;

  /// One JSON object, no trailing newline.
  std::string to_json() const;
};

/// Shift constant of the sup-norm dominance bound.
inline constexpr double kC2 = 128.0 * 3.14159265358979323846;

/// P(C T + Z^2 >= a) for Z ~ N(0, T).
double shifted_square_tail(double a, double C, double T);

/// Upper bound on the probability that some window of length f moves farther than g,
/// for a loop of duration T. Infinite for g = 0.
double window_displacement_bound(double T, double f, double g);

/// KS distance of N discrete 1-D bridge maxima to 1 - exp(-2 r^2 / T). Passes if the
/// distance is at most 0.01 + 1.5 / sqrt(n).
CheckReport check_bridge_max_law(double T, std::int64_t n, std::int64_t N, RngStream& rng);

/// Tail of sup |B|^2 against P(C2 T + Z^2 >= a) and against 4 exp(-a / T), each with three
/// binomial standard errors, on 50 log-spaced thresholds a.
CheckReport check_sup_dominance(double T, std::int64_t n, std::int64_t N, RngStream& rng);

/// KS distance of the summed squared normalized increments of N free loops to the
/// chi-squared law with 2m - 2 degrees of freedom. Passes if at most `tolerance`.
CheckReport check_increment_chi2(double T, std::int64_t n, int m, std::int64_t N, RngStream& rng,
                                 double tolerance = 0.02);

/// Every raster cell center of the enclosed region lies in the hull of the m-vertex
/// polygon or in some stadium Q_i, up to h sqrt(2).
CheckReport check_containment(const LoopPath& loop, int m, double h, double t_prime = 0.0);

/// arcl^2 - 4 pi area - pi^2 (R_out - R_in)^2 >= -1e-9 arcl^2 with exact radii.
CheckReport check_bonnesen(const ConvexPolygon& hull);

/// arcl(P) >= arcl(conv P) + (sqrt 5 - 2) min(2 R^2 / Q, R) for a simple polygon P.
/// Throws InvalidInput for a self-intersecting polygon.
CheckReport check_polygon_arclength(std::span<const Point2> polygon);

/// sum L_i^2 >= (sum L_i)^2 / m >= arcl(conv P)^2 / m >= 4 pi |conv P| / m.
CheckReport check_isoperimetric_chain(std::span<const Point2> polygon);

/// When r_in > r_out / 2: longest facet <= 4 sqrt(r_in (r_out - r_in)) plus the raster
/// allowance 4 sqrt(r_out 2 h sqrt 2). Passes vacuously otherwise.
CheckReport check_facet_bound(const ObservableRecord& record, const ConvexPolygon& hull);

/// Tangent-disk configuration (inner radius 3, outer radius 4) where the facet bound is an
/// equality: the facet must equal 4 sqrt 3 to relative 1e-9.
CheckReport check_facet_extremal();

struct FourierMode {
  int n = 0;
  std::complex<double> a;
};

struct RateFunctional {
  double I = 0.0;           // 2 pi^2 sum n^2 |a_n|^2
  double A = 0.0;           // pi sum n |a_n|^2
  double shoelace_A = 0.0;  // signed area of the curve sampled at `points` times
};

RateFunctional rate_functional(std::span<const FourierMode> modes, int points = 4096);

/// I >= 2 pi A when no negative mode is present, and |shoelace - A| <= 1e-6 |A|.
CheckReport check_rate_functional(std::span<const FourierMode> modes);

/// Empirical frequency over N loops of some window of length f_val moving farther than
/// g_val, against window_displacement_bound plus three standard errors.
CheckReport check_q_event(double T, std::int64_t n, std::int64_t N, double f_val, double g_val,
                          RngStream& rng);

/// Aggregated reports over generated corpora (count instances each, deterministic in seed).
CheckReport fuzz_bonnesen(int count, std::uint64_t seed);
CheckReport fuzz_polygon_arclength(int count, std::uint64_t seed);
CheckReport fuzz_isoperimetric_chain(int count, std::uint64_t seed);
CheckReport fuzz_facet_bound(int count, std::uint64_t seed);
CheckReport fuzz_rate_functional(int count, std::uint64_t seed);

/// Names accepted by run_suite, in execution order.
const std::vector<std::string>& suite_check_names();

/// Runs "all" or a comma-separated list of check names. Throws InvalidInput on an unknown
/// name.
std::vector<CheckReport> run_suite(const std::string& selector, std::uint64_t seed);

}  // namespace loopfluct::verify
