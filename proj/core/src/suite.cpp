#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "loopfluct/mcmc.hpp"
#include "loopfluct/verify.hpp"

namespace loopfluct::verify {

namespace {

enum class Direction { AtMost, AtLeast };

// Folds per-instance reports into one: statistic = number of failing instances.
CheckReport aggregate(const std::string& name, const std::vector<CheckReport>& parts,
                      Direction dir, std::uint64_t seed) {
  std::int64_t failures = 0;
  double worst = -std::numeric_limits<double>::infinity();
  std::string first_failure;
  for (const CheckReport& r : parts) {
    const double margin = dir == Direction::AtMost ? r.statistic - r.threshold : r.threshold - r.statistic;
    worst = std::max(worst, margin);
    if (!r.passed) {
      if (failures == 0) first_failure = r.details;
      ++failures;
    }
  }
  CheckReport rep;
  rep.name = name;
  rep.statistic = static_cast<double>(failures);
  rep.threshold = 0.0;
  rep.passed = failures == 0;
  rep.samples = static_cast<std::int64_t>(parts.size());
  rep.seed = seed;
  std::ostringstream os;
  os.precision(10);
  os << "instances=" << parts.size() << " failures=" << failures << " worst_margin=" << worst;
  if (!first_failure.empty()) os << " first_failure={" << first_failure << '}';
  rep.details = os.str();
  return rep;
}

std::vector<Point2> random_cloud(RngStream& rng) {
  const auto k = static_cast<int>(3 + rng.below(58));
  std::vector<Point2> pts;
  switch (rng.below(3)) {
    case 0:
      for (int i = 0; i < k; ++i) pts.push_back({rng.uniform(), rng.uniform()});
      break;
    case 1: {
      const double a = 0.2 + rng.uniform();
      const double b = 0.2 + rng.uniform();
      for (int i = 0; i < k; ++i) {
        const double t = 2.0 * std::numbers::pi * rng.uniform();
        const double s = 1.0 - 0.2 * rng.uniform();
        pts.push_back({s * a * std::cos(t), s * b * std::sin(t)});
      }
      break;
    }
    default: {
      const LoopPath loop = sample_loop(TimeGrid(1.0, k + 3), rng);
      pts.assign(loop.points().begin(), loop.points().end());
    }
  }
  return pts;
}

ConvexPolygon random_hull(RngStream& rng) {
  for (;;) {
    try {
      return convex_hull(random_cloud(rng));
    } catch (const DegenerateHullError&) {
    }
  }
}

std::vector<Point2> random_star_polygon(RngStream& rng) {
  for (;;) {
    const auto k = static_cast<int>(3 + rng.below(38));
    std::vector<double> angles(static_cast<std::size_t>(k));
    for (double& a : angles) a = 2.0 * std::numbers::pi * rng.uniform();
    std::sort(angles.begin(), angles.end());
    std::vector<Point2> poly;
    for (double a : angles) {
      const double r = 0.1 + 0.9 * rng.uniform();
      poly.push_back({r * std::cos(a), r * std::sin(a)});
    }
    if (is_simple_polygon(poly)) {
      try {
        (void)convex_hull(poly);
        return poly;
      } catch (const DegenerateHullError&) {
      }
    }
  }
}

}  // namespace

CheckReport fuzz_bonnesen(int count, std::uint64_t seed) {
  RngStream rng(seed, 0xB0);
  std::vector<CheckReport> parts;
  for (int i = 0; i < count; ++i) parts.push_back(check_bonnesen(random_hull(rng)));
  return aggregate("bonnesen", parts, Direction::AtLeast, seed);
}

CheckReport fuzz_polygon_arclength(int count, std::uint64_t seed) {
  RngStream rng(seed, 0xB1);
  std::vector<CheckReport> parts;
  for (int i = 0; i < count; ++i) parts.push_back(check_polygon_arclength(random_star_polygon(rng)));
  return aggregate("polygon_arclength", parts, Direction::AtLeast, seed);
}

CheckReport fuzz_isoperimetric_chain(int count, std::uint64_t seed) {
  RngStream rng(seed, 0xB2);
  std::vector<CheckReport> parts;
  while (static_cast<int>(parts.size()) < count) {
    const std::vector<Point2> poly = random_cloud(rng);
    try {
      parts.push_back(check_isoperimetric_chain(poly));
    } catch (const DegenerateHullError&) {
    }
  }
  return aggregate("isoperimetric_chain", parts, Direction::AtLeast, seed);
}

CheckReport fuzz_facet_bound(int count, std::uint64_t seed) {
  RngStream rng(seed, 0xB3);
  std::vector<CheckReport> parts;
  std::int64_t vacuous = 0;
  while (static_cast<int>(parts.size()) < count) {
    // Points in a thin annulus keep the inradius above half the outradius most of the time.
    const auto k = static_cast<int>(4 + rng.below(40));
    const double inner = 0.5 + 0.5 * rng.uniform();
    std::vector<Point2> pts;
    for (int i = 0; i < k; ++i) {
      const double a = 2.0 * std::numbers::pi * rng.uniform();
      const double r = inner + (1.0 - inner) * rng.uniform();
      pts.push_back({r * std::cos(a), r * std::sin(a)});
    }
    try {
      const ConvexPolygon hull = convex_hull(pts);
      ObservableRecord rec;
      rec.r_in = chebyshev_inradius_convex(hull).radius;
      rec.r_out = outradius(hull.vertices()).radius;
      rec.ann_width = rec.r_out - rec.r_in;
      rec.longest_facet = longest_facet(hull);
      if (!(rec.r_in > 0.5 * rec.r_out)) ++vacuous;
      parts.push_back(check_facet_bound(rec, hull));
    } catch (const DegenerateHullError&) {
    }
  }
  CheckReport rep = aggregate("facet_bound", parts, Direction::AtMost, seed);
  rep.details += " vacuous=" + std::to_string(vacuous);
  return rep;
}

CheckReport check_facet_extremal() {
  // Disk of radius 3 centred at (1, 0), internally tangent to the radius-4 disk at the
  // origin, joined with the chord x = -2 of the larger disk.
  constexpr int kSides = 720;
  std::vector<Point2> pts;
  for (int k = 0; k < kSides; ++k) {
    const double a = 2.0 * std::numbers::pi * k / kSides;
    pts.push_back({1.0 + 3.0 * std::cos(a), 3.0 * std::sin(a)});
  }
  const double half = 2.0 * std::sqrt(3.0);
  pts.push_back({-2.0, -half});
  pts.push_back({-2.0, half});
  const ConvexPolygon hull = convex_hull(pts);
  ObservableRecord rec;
  rec.r_in = 3.0;
  rec.r_out = outradius(pts).radius;
  rec.ann_width = rec.r_out - rec.r_in;
  const CheckReport bound = check_facet_bound(rec, hull);
  const double facet = longest_facet(hull);
  const double target = 4.0 * std::sqrt(rec.r_in * (rec.r_out - rec.r_in));
  CheckReport rep;
  rep.name = "facet_extremal";
  rep.statistic = std::abs(facet - target) / target;
  rep.threshold = 1e-9;
  rep.passed = bound.passed && rep.statistic <= rep.threshold;
  rep.samples = 1;
  std::ostringstream os;
  os.precision(17);
  os << "longest_facet=" << facet << " bound=" << target << " r_out=" << rec.r_out;
  rep.details = os.str();
  return rep;
}

CheckReport fuzz_rate_functional(int count, std::uint64_t seed) {
  RngStream rng(seed, 0xB4);
  std::vector<CheckReport> parts;
  std::int64_t inequality_failures = 0;
  for (int i = 0; i < count; ++i) {
    // Full positive spectrum: inequality only.
    const auto N = static_cast<int>(1 + rng.below(32));
    const double decay = 2.0 * rng.uniform();
    std::vector<FourierMode> modes;
    for (int n = 0; n <= N; ++n) {
      const double s = std::pow(std::max(n, 1), -decay);
      modes.push_back({n, s * std::complex<double>(rng.normal(), rng.normal())});
    }
    const RateFunctional rf = rate_functional(modes, 8);
    if (rf.I < 2.0 * std::numbers::pi * rf.A * (1.0 - 1e-12)) ++inequality_failures;

    // Near-circle spectrum: inequality and shoelace agreement.
    std::vector<FourierMode> near;
    near.push_back({0, {rng.normal(), rng.normal()}});
    near.push_back({1, std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform())});
    for (int n = 2; n <= N; ++n) {
      near.push_back({n, 0.1 / (n * n) * std::complex<double>(rng.normal(), rng.normal())});
    }
    parts.push_back(check_rate_functional(near));
  }
  CheckReport rep = aggregate("rate_functional", parts, Direction::AtMost, seed);
  rep.statistic += static_cast<double>(inequality_failures);
  rep.passed = rep.passed && inequality_failures == 0;
  rep.details += " full_spectrum_inequality_failures=" + std::to_string(inequality_failures);
  return rep;
}

namespace {

CheckReport circle_rate_functional() {
  const FourierMode circle[] = {{0, -1.0}, {1, 1.0}};
  const RateFunctional rf = rate_functional(circle);
  const double pi = std::numbers::pi;
  CheckReport rep = check_rate_functional(circle);
  rep.name = "rate_functional_circle";
  const double err = std::max(std::abs(rf.I - 2.0 * pi * pi) / (2.0 * pi * pi), std::abs(rf.A - pi) / pi);
  rep.passed = rep.passed && err <= 1e-12;
  rep.details += " identity_rel_error=" + std::to_string(err);
  return rep;
}

CheckReport containment_on_chain(std::uint64_t seed) {
  const double T = 4.0;
  const ChainConfig config = ChainConfig::for_time(T, 128);
  RngStream rng(seed, 0xC0);
  std::vector<CheckReport> parts;
  RunOptions opts;
  opts.burn_in = 50;
  opts.sweeps = 50;
  opts.thin = 5;
  run_chain(config, opts, rng, [&](const ChainState& state) {
    const LoopPath loop = state.loop();
    for (int m : {8, 16}) {
      parts.push_back(check_containment(loop, m, config.h, 0.0));
      parts.push_back(check_containment(loop, m, config.h, 0.5 * T / m));
    }
  });
  return aggregate("containment", parts, Direction::AtMost, seed);
}

}  // namespace

const std::vector<std::string>& suite_check_names() {
  static const std::vector<std::string> names = {
      "bridge_max_law", "sup_dominance",  "increment_chi2",     "containment",
      "bonnesen",       "polygon_arclength", "isoperimetric_chain", "facet_bound",
      "facet_extremal", "rate_functional",   "q_event"};
  return names;
}

std::vector<CheckReport> run_suite(const std::string& selector, std::uint64_t seed) {
  const auto& names = suite_check_names();
  std::vector<std::string> chosen;
  if (selector == "all") {
    chosen = names;
  } else {
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = selector.find(',', start);
      const std::string item = selector.substr(start, comma == std::string::npos ? comma : comma - start);
      require(std::find(names.begin(), names.end(), item) != names.end(),
              "unknown check name '" + item + "'");
      chosen.push_back(item);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }

  std::vector<CheckReport> out;
  for (const std::string& name : chosen) {
    const auto index = static_cast<std::uint64_t>(std::find(names.begin(), names.end(), name) - names.begin());
    RngStream rng(seed, index);
    if (name == "bridge_max_law") {
      out.push_back(check_bridge_max_law(1.0, 4096, 10000, rng));
    } else if (name == "sup_dominance") {
      out.push_back(check_sup_dominance(1.0, 1024, 10000, rng));
    } else if (name == "increment_chi2") {
      out.push_back(check_increment_chi2(1.0, 1024, 16, 10000, rng));
    } else if (name == "containment") {
      out.push_back(containment_on_chain(seed));
    } else if (name == "bonnesen") {
      out.push_back(fuzz_bonnesen(1000, seed));
    } else if (name == "polygon_arclength") {
      out.push_back(fuzz_polygon_arclength(1000, seed));
    } else if (name == "isoperimetric_chain") {
      out.push_back(fuzz_isoperimetric_chain(1000, seed));
    } else if (name == "facet_bound") {
      out.push_back(fuzz_facet_bound(1000, seed));
    } else if (name == "facet_extremal") {
      out.push_back(check_facet_extremal());
    } else if (name == "rate_functional") {
      out.push_back(circle_rate_functional());
      out.push_back(fuzz_rate_functional(1000, seed));
    } else if (name == "q_event") {
      out.push_back(check_q_event(1.0, 4096, 10000, 1.0 / 64.0, 1.0, rng));
    }
  }
  return out;
}

}  // namespace loopfluct::verify
