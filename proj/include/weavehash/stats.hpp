#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace weavehash {

// Regularized incomplete gamma functions (series + continued fraction).
double gamma_p(double a, double x);  // P(a,x), lower
double gamma_q(double a, double x);  // Q(a,x), upper

// Asymptotic Kolmogorov distribution: P(sqrt(n) D <= lambda).
double kolmogorov_cdf(double lambda);

struct KsResult {
  double d = 0.0;        // sup |F_n - F|
  double p_value = 1.0;  // Stephens' finite-n approximation
  std::size_t n = 0;
};

// One-sample KS test against a cdf; samples need not be sorted.
KsResult ks_test(std::span<const double> samples,
                 const std::function<double(double)>& cdf);

// Wigner-Dyson surmise used for mesh spacings:
//   P(s) = (32 / pi^2 s0) (s/s0)^2 exp(-(4/pi)(s/s0)^2),  mean = s0.
double wigner_dyson_pdf(double s, double s0);
double wigner_dyson_cdf(double s, double s0);

struct WignerFit {
  double s0_mean = 0.0;  // sample mean (the distribution's mean is s0)
  double s0_fit = 0.0;   // s0 minimizing the KS statistic near the mean
  KsResult ks;           // against s0_fit
  bool pass = false;     // p_value >= alpha
};

// Fits s0 and runs the KS test at significance alpha. Needs >= 100 samples.
WignerFit wigner_dyson_test(std::span<const double> spacings,
                            double alpha = 0.01);

// Analytic model of brute-force approximation over N uniform candidates:
//   P_BF(d) = (4/pi) (theta - sin(4 theta)/4), theta = arcsin(d/2)
// with the closest-of-N density q(t) and the closed-form mean distance.
struct BaselineModel {
  int L = 0;
  std::uint64_t N = 0;  // candidate words of length <= L

  double p_density(double t) const;    // p_BF(t)
  double p_cumulative(double t) const; // P_BF(t), P_BF(sqrt(2)) = 1
  double closest_density(double t) const;  // q(t) = N p (1-P)^(N-1) ~ N p e^{-N P}
  double mean_distance() const;        // incomplete-gamma closed form
};

BaselineModel bf_baseline(int L);

// Predicted mean brute-force error at length L: 1.021 exp(-L / 5.970).
double asymptotic_mean_error(int L);

// min over N Haar draws of the distance to a fixed target, repeated;
// returns the sample means. Used to cross-check mean_distance().
struct MonteCarloMin {
  double mean = 0.0;
  double stderr_mean = 0.0;
  int trials = 0;
};
MonteCarloMin mc_min_distance(std::uint64_t N, int trials, std::uint64_t seed);

struct Histogram {
  std::vector<double> edges;   // nbins + 1, log-spaced
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
};

// Log-spaced histogram over [min/2, 2*max] of the positive samples.
Histogram make_log_histogram(std::span<const double> samples, int nbins = 60);

// "low high count density" per line, 17 significant digits.
std::string format_histogram(const Histogram& h);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

double mean(std::span<const double> v);
double stddev(std::span<const double> v);  // sample (n-1)
// Empirical quantile with linear interpolation, q in [0, 1].
double quantile(std::span<const double> v, double q);

}  // namespace weavehash
