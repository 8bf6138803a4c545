#pragma once

#include <functional>
#include <span>
#include <vector>

namespace loopfluct {

double normal_cdf(double x);
/// P(Z > x) for a standard normal Z, accurate in the far tail.
double normal_sf(double x);

/// Adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b] to absolute tolerance tol.
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

/// Chi-squared CDF with m degrees of freedom by quadrature of chi2_pdf. The substitution
/// x = u^2 removes the endpoint singularity for m = 1.
double chi2_cdf(double x, int m);

/// One-sample Kolmogorov-Smirnov distance sup |F_n - F|. `samples` need not be sorted.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov distance sup |F_a - F_b|.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Standard error of a binomial proportion estimate p from N trials.
double binomial_se(double p, std::size_t N);

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);

/// Integrated autocorrelation time 1 + 2 sum rho_k with Geyer's initial positive
/// sequence truncation. Returns 1 for constant or very short traces.
double integrated_autocorrelation_time(std::span<const double> trace);

}  // namespace loopfluct
