#include "loopfluct/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "loopfluct/raster.hpp"
#include "loopfluct/stats.hpp"

namespace loopfluct::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format(const std::initializer_list<std::pair<const char*, double>>& fields) {
  std::ostringstream os;
  os.precision(10);
  bool first = true;
  for (const auto& [key, value] : fields) {
    if (!first) os << ' ';
    os << key << '=' << value;
    first = false;
  }
  return os.str();
}

double sup_norm_squared(std::span<const Point2> pts) {
  double best = 0.0;
  for (const Point2& p : pts) best = std::max(best, p.x * p.x + p.y * p.y);
  return best;
}

// Running max / min over windows [k, k + w] of a cyclic sequence, by block prefix and
// suffix extrema with block length w + 1.
class WindowExtrema {
 public:
  void build(const std::vector<double>& v, std::int64_t w) {
    const auto len = static_cast<std::int64_t>(v.size());
    const std::int64_t block = w + 1;
    pre_max_.resize(v.size());
    pre_min_.resize(v.size());
    suf_max_.resize(v.size());
    suf_min_.resize(v.size());
    for (std::int64_t k = 0; k < len; ++k) {
      const bool start = k % block == 0;
      pre_max_[k] = start ? v[k] : std::max(pre_max_[k - 1], v[k]);
      pre_min_[k] = start ? v[k] : std::min(pre_min_[k - 1], v[k]);
    }
    for (std::int64_t k = len; k-- > 0;) {
      const bool end = k == len - 1 || (k + 1) % block == 0;
      suf_max_[k] = end ? v[k] : std::max(suf_max_[k + 1], v[k]);
      suf_min_[k] = end ? v[k] : std::min(suf_min_[k + 1], v[k]);
    }
    w_ = w;
  }
  double max(std::int64_t k) const { return std::max(suf_max_[k], pre_max_[k + w_]); }
  double min(std::int64_t k) const { return std::min(suf_min_[k], pre_min_[k + w_]); }

 private:
  std::vector<double> pre_max_, pre_min_, suf_max_, suf_min_;
  std::int64_t w_ = 0;
};

// True if |B(s) - B(t)| > g for some grid times t <= s <= t + w steps (cyclically).
bool window_exceeds(std::span<const Point2> pts, std::int64_t w, double g) {
  const auto n = static_cast<std::int64_t>(pts.size());
  thread_local std::vector<double> xs, ys;
  thread_local WindowExtrema ex, ey;
  xs.resize(static_cast<std::size_t>(n + w));
  ys.resize(static_cast<std::size_t>(n + w));
  for (std::int64_t k = 0; k < n + w; ++k) {
    xs[k] = pts[k % n].x;
    ys[k] = pts[k % n].y;
  }
  ex.build(xs, w);
  ey.build(ys, w);
  const double g2 = g * g;
  for (std::int64_t k = 0; k < n; ++k) {
    const double dx = std::max(xs[k] - ex.min(k), ex.max(k) - xs[k]);
    const double dy = std::max(ys[k] - ey.min(k), ey.max(k) - ys[k]);
    if (dx * dx + dy * dy <= g2) continue;
    for (std::int64_t s = k + 1; s <= k + w; ++s) {
      const double ux = xs[s] - xs[k];
      const double uy = ys[s] - ys[k];
      if (ux * ux + uy * uy > g2) return true;
    }
  }
  return false;
}

}  // namespace

std::string CheckReport::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["passed"] = passed;
  // JSON has no infinity; emit null for non-finite values.
  j["statistic"] = std::isfinite(statistic) ? nlohmann::ordered_json(statistic) : nullptr;
  j["threshold"] = std::isfinite(threshold) ? nlohmann::ordered_json(threshold) : nullptr;
  j["samples"] = samples;
  j["seed"] = seed;
  j["details"] = details;
  return j.dump();
}

double shifted_square_tail(double a, double C, double T) {
  if (a <= C * T) return 1.0;
  return 2.0 * normal_sf(std::sqrt((a - C * T) / T));
}

double window_displacement_bound(double T, double f, double g) {
  if (g <= 0.0) return kInf;
  const double sp = std::sqrt(std::numbers::pi);
  return (32.0 * std::numbers::sqrt2 * T / (sp * std::sqrt(f) * g) + 16.0 * std::sqrt(T) / (sp * g)) *
         std::exp(-g * g / (128.0 * f));
}

CheckReport check_bridge_max_law(double T, std::int64_t n, std::int64_t N, RngStream& rng) {
  require(T > 0.0 && n >= 1 && N >= 1, "check_bridge_max_law: need T > 0, n >= 1, N >= 1");
  std::vector<double> maxima(static_cast<std::size_t>(N));
  for (auto& m : maxima) m = sample_bridge_max_1d(T, n, rng);
  const double r_half = std::sqrt(T / 2.0);
  const auto above = std::count_if(maxima.begin(), maxima.end(), [&](double m) { return m > r_half; });
  const double ks = ks_distance(maxima, [T](double r) {
    return r <= 0.0 ? 0.0 : -std::expm1(-2.0 * r * r / T);
  });
  CheckReport rep;
  rep.name = "bridge_max_law";
  rep.statistic = ks;
  rep.threshold = 0.01 + 1.5 / std::sqrt(static_cast<double>(n));
  rep.passed = ks <= rep.threshold;
  rep.samples = N;
  rep.seed = rng.seed();
  rep.details = format({{"T", T}, {"n", static_cast<double>(n)},
                        {"p_above_sqrt_T_over_2", static_cast<double>(above) / static_cast<double>(N)},
                        {"exp_minus_1", std::exp(-1.0)}});
  return rep;
}

CheckReport check_sup_dominance(double T, std::int64_t n, std::int64_t N, RngStream& rng) {
  require(T > 0.0 && n >= 2 && N >= 1, "check_sup_dominance: need T > 0, n >= 2, N >= 1");
  const TimeGrid grid(T, n);
  std::vector<double> sups(static_cast<std::size_t>(N));
  for (auto& s : sups) s = sup_norm_squared(sample_loop(grid, rng).points());
  std::sort(sups.begin(), sups.end());

  constexpr int kThresholds = 50;
  const double lo = 0.05 * T;
  const double hi = 2.0 * kC2 * T;
  double worst = -kInf;
  double worst_a = 0.0;
  for (int k = 0; k < kThresholds; ++k) {
    const double a = lo * std::pow(hi / lo, static_cast<double>(k) / (kThresholds - 1));
    const auto ge = sups.end() - std::lower_bound(sups.begin(), sups.end(), a);
    const auto gt = sups.end() - std::upper_bound(sups.begin(), sups.end(), a);
    const double p_ge = static_cast<double>(ge) / static_cast<double>(N);
    const double p_gt = static_cast<double>(gt) / static_cast<double>(N);
    const double excess_bound =
        p_ge - shifted_square_tail(a, kC2, T) - 3.0 * binomial_se(p_ge, static_cast<std::size_t>(N));
    const double excess_exp = p_gt - std::min(1.0, 4.0 * std::exp(-a / T)) -
                              3.0 * binomial_se(p_gt, static_cast<std::size_t>(N));
    const double excess = std::max(excess_bound, excess_exp);
    if (excess > worst) {
      worst = excess;
      worst_a = a;
    }
  }
  CheckReport rep;
  rep.name = "sup_dominance";
  rep.statistic = worst;
  rep.threshold = 0.0;
  rep.passed = worst <= 0.0;
  rep.samples = N;
  rep.seed = rng.seed();
  rep.details = format({{"T", T}, {"n", static_cast<double>(n)}, {"C2", kC2},
                        {"thresholds", kThresholds}, {"worst_a", worst_a}});
  return rep;
}

CheckReport check_increment_chi2(double T, std::int64_t n, int m, std::int64_t N, RngStream& rng,
                                 double tolerance) {
  require(N >= 1, "check_increment_chi2: N must be positive");
  const TimeGrid grid(T, n);
  std::vector<double> sums(static_cast<std::size_t>(N));
  for (auto& s : sums) {
    const LoopPath loop = sample_loop(grid, rng);
    s = 0.0;
    for (double e : normalized_increments(polygonal_approx(loop, m), T)) s += e * e;
  }
  const int dof = 2 * m - 2;
  CheckReport rep;
  rep.name = "increment_chi2";
  rep.statistic = ks_distance(sums, [dof](double x) { return chi2_cdf(x, dof); });
  rep.threshold = tolerance;
  rep.passed = rep.statistic <= tolerance;
  rep.samples = N;
  rep.seed = rng.seed();
  rep.details = format({{"T", T}, {"n", static_cast<double>(n)}, {"m", m}, {"dof", dof}});
  return rep;
}

CheckReport check_containment(const LoopPath& loop, int m, double h, double t_prime) {
  require(m >= 3 && loop.size() % m == 0, "check_containment: m must divide n");
  const PolygonalApprox approx = polygonal_approx(loop, m, t_prime);
  std::optional<ConvexPolygon> hull;
  try {
    hull.emplace(convex_hull(approx.vertices));
  } catch (const DegenerateHullError&) {
    // Collinear vertices: the hull is a segment already covered by the stadia.
  }
  const RasterRegion region = enclosed_region(loop.points(), h);
  double worst = 0.0;
  std::int64_t outside_hull = 0;
  for (const Point2& c : region.occupied_centers()) {
    if (hull && hull->contains(c, 0.0)) continue;
    ++outside_hull;
    double gap = kInf;
    if (hull) {
      for (std::size_t e = 0; e < hull->size(); ++e) gap = std::min(gap, dist_point_segment(c, hull->edge(e)));
    }
    for (const Stadium& q : approx.Q) gap = std::min(gap, dist_point_segment(c, q.axis) - q.radius);
    worst = std::max(worst, gap);
  }
  CheckReport rep;
  rep.name = "containment";
  rep.statistic = worst;
  rep.threshold = h * std::numbers::sqrt2;
  rep.passed = worst <= rep.threshold;
  rep.samples = region.cell_count();
  rep.details = format({{"m", m}, {"t_prime", approx.t_prime}, {"h", h},
                        {"cells_outside_hull", static_cast<double>(outside_hull)}});
  return rep;
}

CheckReport check_bonnesen(const ConvexPolygon& hull) {
  const double L = hull.arclength();
  const double A = hull.area();
  const double R = outradius(hull.vertices()).radius;
  const double r = chebyshev_inradius_convex(hull).radius;
  const double pi = std::numbers::pi;
  const double gap = L * L - 4.0 * pi * A - pi * pi * (R - r) * (R - r);
  CheckReport rep;
  rep.name = "bonnesen";
  rep.statistic = gap / (L * L);
  rep.threshold = -1e-9;
  rep.passed = rep.statistic >= rep.threshold;
  rep.samples = 1;
  rep.details = format({{"arclength", L}, {"area", A}, {"r_out", R}, {"r_in", r}});
  return rep;
}

CheckReport check_polygon_arclength(std::span<const Point2> polygon) {
  require(polygon.size() >= 3, "check_polygon_arclength: need at least 3 vertices");
  require(is_simple_polygon(polygon), "check_polygon_arclength: polygon is not simple");
  const ConvexPolygon hull = convex_hull(polygon);
  const double R = max_local_roughness(polygon, hull);
  const double Q = longest_facet(hull);
  const double lhs = polyline_length(polygon, true);
  const double rhs = hull.arclength() + (std::sqrt(5.0) - 2.0) * std::min(2.0 * R * R / Q, R);
  CheckReport rep;
  rep.name = "polygon_arclength";
  rep.statistic = lhs - rhs;
  // Rounding allowance only: for a convex polygon both sides agree exactly.
  rep.threshold = -1e-12 * lhs;
  rep.passed = rep.statistic >= rep.threshold;
  rep.samples = 1;
  rep.details = format({{"arclength", lhs}, {"hull_arclength", hull.arclength()}, {"R", R}, {"Q", Q}});
  return rep;
}

CheckReport check_isoperimetric_chain(std::span<const Point2> polygon) {
  require(polygon.size() >= 3, "check_isoperimetric_chain: need at least 3 vertices");
  const auto m = static_cast<double>(polygon.size());
  double sum_sq = 0.0, sum = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const double l = distance(polygon[i], polygon[(i + 1) % polygon.size()]);
    sum += l;
    sum_sq += l * l;
  }
  const ConvexPolygon hull = convex_hull(polygon);
  const double hull_len = hull.arclength();
  const double chain[4] = {sum_sq, sum * sum / m, hull_len * hull_len / m,
                           4.0 * std::numbers::pi * hull.area() / m};
  double worst = kInf;
  for (int k = 0; k < 3; ++k) worst = std::min(worst, (chain[k] - chain[k + 1]) / chain[0]);
  CheckReport rep;
  rep.name = "isoperimetric_chain";
  rep.statistic = worst;
  rep.threshold = -1e-12;
  rep.passed = worst >= rep.threshold;
  rep.samples = 1;
  rep.details = format({{"sum_L2", chain[0]}, {"cauchy_schwarz", chain[1]}, {"hull_term", chain[2]},
                        {"area_term", chain[3]}});
  return rep;
}

CheckReport check_facet_bound(const ObservableRecord& record, const ConvexPolygon& hull) {
  CheckReport rep;
  rep.name = "facet_bound";
  rep.samples = 1;
  const double facet = longest_facet(hull);
  if (!(record.r_in > 0.5 * record.r_out)) {
    rep.passed = true;
    rep.statistic = 0.0;
    rep.threshold = 0.0;
    rep.details = format({{"vacuous", 1}, {"r_in", record.r_in}, {"r_out", record.r_out}});
    return rep;
  }
  const double bound = 4.0 * std::sqrt(record.r_in * std::max(0.0, record.r_out - record.r_in));
  const double slack = 4.0 * std::sqrt(record.r_out * 2.0 * record.h * std::numbers::sqrt2);
  rep.statistic = facet - bound;
  rep.threshold = slack + 1e-12 * std::max(1.0, bound);
  rep.passed = rep.statistic <= rep.threshold;
  rep.details = format({{"vacuous", 0}, {"longest_facet", facet}, {"bound", bound},
                        {"r_in", record.r_in}, {"r_out", record.r_out}, {"h", record.h}});
  return rep;
}

RateFunctional rate_functional(std::span<const FourierMode> modes, int points) {
  require(points >= 3, "rate_functional: need at least 3 sample points");
  const double pi = std::numbers::pi;
  RateFunctional out;
  for (const FourierMode& md : modes) {
    const double nn = md.n;
    const double mag2 = std::norm(md.a);
    out.I += 2.0 * pi * pi * nn * nn * mag2;
    out.A += pi * nn * mag2;
  }
  std::vector<Point2> curve(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    std::complex<double> z;
    for (const FourierMode& md : modes) {
      const double phase = 2.0 * pi * static_cast<double>(md.n) * k / points;
      z += md.a * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    curve[k] = {z.real(), z.imag()};
  }
  out.shoelace_A = signed_area(curve);
  return out;
}

CheckReport check_rate_functional(std::span<const FourierMode> modes) {
  const RateFunctional rf = rate_functional(modes);
  const bool positive = std::all_of(modes.begin(), modes.end(),
                                    [](const FourierMode& md) { return md.n >= 0 || md.a == 0.0; });
  double scale = 0.0;
  for (const FourierMode& md : modes) scale += std::numbers::pi * std::abs(md.n) * std::norm(md.a);
  if (scale == 0.0) scale = 1.0;
  const double shoelace_err = std::abs(rf.shoelace_A - rf.A) / scale;
  const double deficit = positive ? std::max(0.0, (2.0 * std::numbers::pi * rf.A - rf.I) / scale) : 0.0;
  CheckReport rep;
  rep.name = "rate_functional";
  // A violated inequality fails outright regardless of the shoelace agreement.
  rep.statistic = deficit > 1e-12 ? std::max(shoelace_err, 1.0) : shoelace_err;
  rep.threshold = 1e-6;
  rep.passed = rep.statistic <= rep.threshold;
  rep.samples = static_cast<std::int64_t>(modes.size());
  rep.details = format({{"I", rf.I}, {"A", rf.A}, {"shoelace_A", rf.shoelace_A},
                        {"shoelace_rel_error", shoelace_err}, {"positive_modes_only", positive ? 1 : 0},
                        {"I_minus_2piA", rf.I - 2.0 * std::numbers::pi * rf.A}});
  return rep;
}

CheckReport check_q_event(double T, std::int64_t n, std::int64_t N, double f_val, double g_val,
                          RngStream& rng) {
  require(f_val > 0.0 && f_val <= T, "check_q_event: need 0 < f_val <= T");
  require(g_val >= 0.0 && N >= 1, "check_q_event: need g_val >= 0 and N >= 1");
  const TimeGrid grid(T, n);
  const auto w = static_cast<std::int64_t>(std::floor(f_val / grid.dt() + 1e-9));
  std::int64_t hits = 0;
  for (std::int64_t s = 0; s < N; ++s) {
    const LoopPath loop = sample_loop(grid, rng);
    if (w >= 1 && window_exceeds(loop.points(), std::min(w, n), g_val)) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(N);
  const double bound = window_displacement_bound(T, f_val, g_val);
  CheckReport rep;
  rep.name = "q_event";
  rep.statistic = p;
  rep.threshold = bound + 3.0 * binomial_se(p, static_cast<std::size_t>(N));
  rep.passed = rep.statistic <= rep.threshold;
  rep.samples = N;
  rep.seed = rng.seed();
  rep.details = format({{"T", T}, {"n", static_cast<double>(n)}, {"f", f_val}, {"g", g_val},
                        {"bound", bound}, {"vacuous", bound >= 1.0 ? 1 : 0}});
  return rep;
}

}  // namespace loopfluct::verify
