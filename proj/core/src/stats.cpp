#include "loopfluct/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <numbers>

#include "loopfluct/error.hpp"
#include "loopfluct/sampler.hpp"

namespace loopfluct {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_sf(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Estimate {
  double value;
  double error;
};

Estimate gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  // Global adaptive bisection: always split the panel with the largest error estimate.
  struct Panel {
    double a, b;
    Estimate est;
    bool operator<(const Panel& o) const { return est.error < o.est.error; }
  };
  std::priority_queue<Panel> panels;
  const Estimate first = gauss_kronrod(f, a, b);
  panels.push({a, b, first});
  double value = first.value, error = first.error;
  constexpr int kMaxPanels = 2000;
  for (int count = 1; count < kMaxPanels; ++count) {
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * std::abs(value);
    if (error <= std::max(tol, floor)) break;
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Estimate left = gauss_kronrod(f, worst.a, mid);
    const Estimate right = gauss_kronrod(f, mid, worst.b);
    value += left.value + right.value - worst.est.value;
    error += left.error + right.error - worst.est.error;
    panels.push({worst.a, mid, left});
    panels.push({mid, worst.b, right});
  }
  // Re-sum to shed the drift of the running updates.
  double total = 0.0;
  for (; !panels.empty(); panels.pop()) total += panels.top().est.value;
  return total;
}

double chi2_cdf(double x, int m) {
  require(m >= 1, "chi2_cdf: m must be at least 1");
  if (x <= 0.0) return 0.0;
  // Integrate 2u f_m(u^2) on [0, sqrt(x)]; past the bulk use the complement for accuracy.
  auto g = [m](double u) { return u == 0.0 ? (m == 1 ? std::sqrt(2.0 / std::numbers::pi) : 0.0)
                                           : 2.0 * u * chi2_pdf(u * u, m); };
  const double u = std::sqrt(x);
  const double bulk = std::sqrt(static_cast<double>(m)) + 1.0;
  if (u <= bulk) return std::clamp(integrate(g, 0.0, u, 1e-14), 0.0, 1.0);
  // Upper tail: integrate on [u, u_max] where the density is negligible.
  const double u_max = std::max(u, bulk) + 40.0;
  const double tail = integrate(g, u, u_max, 1e-16);
  return std::clamp(1.0 - tail, 0.0, 1.0);
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  require(!samples.empty(), "ks_distance: no samples");
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<double>(samples.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double F = cdf(samples[i]);
    worst = std::max({worst, static_cast<double>(i + 1) / n - F, F - static_cast<double>(i) / n});
  }
  return worst;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  require(!a.empty() && !b.empty(), "ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double worst = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    worst = std::max(worst, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return worst;
}

double binomial_se(double p, std::size_t N) {
  require(N > 0, "binomial_se: N must be positive");
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(N));
}

double mean(std::span<const double> xs) {
  require(!xs.empty(), "mean: empty input");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
  require(xs.size() >= 2, "variance: need at least 2 values");
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

double integrated_autocorrelation_time(std::span<const double> trace) {
  const std::size_t n = trace.size();
  if (n < 4) return 1.0;
  const double m = mean(trace);
  auto autocov = [&](std::size_t lag) {
    double s = 0.0;
    for (std::size_t t = 0; t + lag < n; ++t) s += (trace[t] - m) * (trace[t + lag] - m);
    return s / static_cast<double>(n);
  };
  const double c0 = autocov(0);
  if (!(c0 > 0.0)) return 1.0;
  // Geyer: sum consecutive pairs Gamma_k = rho_{2k} + rho_{2k+1} while positive.
  double tau = -1.0;
  for (std::size_t k = 0; 2 * k + 1 < n; ++k) {
    const double pair = (autocov(2 * k) + autocov(2 * k + 1)) / c0;
    if (pair <= 0.0) break;
    tau += 2.0 * pair;
  }
  return std::max(1.0, tau);
}

}  // namespace loopfluct
