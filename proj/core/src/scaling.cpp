#include <algorithm>
#include <cmath>

#include "loopfluct/observables.hpp"
#include "loopfluct/rng.hpp"

namespace loopfluct {

namespace {

std::pair<double, double> ols(const std::vector<double>& x, const std::vector<double>& y) {
  const auto k = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= k;
  my /= k;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

double average(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

ScalingFit scaling_fit(const std::map<double, std::vector<double>>& groups, int resamples,
                       std::uint64_t seed) {
  require(groups.size() >= 3, "scaling_fit: need at least 3 distinct T values");
  require(resamples >= 1, "scaling_fit: resamples must be positive");
  std::vector<double> x, y;
  for (const auto& [T, values] : groups) {
    require(T > 0.0, "scaling_fit: T must be positive");
    require(!values.empty(), "scaling_fit: every T needs at least one value");
    const double m = average(values);
    require(m > 0.0 && std::isfinite(m), "scaling_fit: group means must be positive");
    x.push_back(std::log(T));
    y.push_back(std::log(m));
  }

  ScalingFit fit;
  std::tie(fit.exponent, fit.intercept) = ols(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) fit.points.emplace_back(x[i], y[i]);

  RngStream rng(seed, 0);
  std::vector<double> slopes;
  slopes.reserve(static_cast<std::size_t>(resamples));
  std::vector<double> yb(x.size());
  for (int b = 0; b < resamples; ++b) {
    std::size_t g = 0;
    for (const auto& entry : groups) {
      const std::vector<double>& values = entry.second;
      double s = 0.0;
      for (std::size_t r = 0; r < values.size(); ++r) s += values[rng.below(values.size())];
      const double m = s / static_cast<double>(values.size());
      // A resample can only be non-positive if some replicate is; skip such draws.
      yb[g++] = m > 0.0 ? std::log(m) : std::nan("");
    }
    if (std::all_of(yb.begin(), yb.end(), [](double v) { return std::isfinite(v); })) {
      slopes.push_back(ols(x, yb).first);
    }
  }
  std::sort(slopes.begin(), slopes.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(slopes.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, slopes.size() - 1);
    return slopes[lo] + (pos - static_cast<double>(lo)) * (slopes[hi] - slopes[lo]);
  };
  fit.ci_low = slopes.empty() ? fit.exponent : std::min(quantile(0.025), fit.exponent);
  fit.ci_high = slopes.empty() ? fit.exponent : std::max(quantile(0.975), fit.exponent);
  return fit;
}

}  // namespace loopfluct
