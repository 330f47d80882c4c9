#include "weavehash/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "weavehash/rng.hpp"
#include "weavehash/weave.hpp"

namespace weavehash {

namespace {

double gamma_series(double a, double x) {
  double sum = 1.0 / a, term = sum, ap = a;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_cf(double a, double x) {
  // Lentz's continued fraction for Q(a, x)
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -double(i) * (double(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_p domain");
  if (x == 0.0) return 0.0;
  return x < a + 1.0 ? gamma_series(a, x) : 1.0 - gamma_cf(a, x);
}

double gamma_q(double a, double x) { return 1.0 - gamma_p(a, x); }

double kolmogorov_cdf(double lambda) {
  if (lambda <= 0.0) return 0.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return 1.0 - 2.0 * sum;
}

KsResult ks_test(std::span<const double> samples,
                 const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_test needs samples");
  std::vector<double> xs(samples.begin(), samples.end());
  std::sort(xs.begin(), xs.end());
  const double n = double(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, std::fabs(double(i + 1) / n - f));
    d = std::max(d, std::fabs(f - double(i) / n));
  }
  const double rn = std::sqrt(n);
  const double lambda = (rn + 0.12 + 0.11 / rn) * d;
  return KsResult{d, 1.0 - kolmogorov_cdf(lambda), xs.size()};
}

double wigner_dyson_pdf(double s, double s0) {
  if (s < 0.0) return 0.0;
  const double u = s / s0;
  return (32.0 / (M_PI * M_PI * s0)) * u * u *
         std::exp(-(4.0 / M_PI) * u * u);
}

double wigner_dyson_cdf(double s, double s0) {
  if (s <= 0.0) return 0.0;
  const double u = s / s0;
  return std::erf(2.0 * u / std::sqrt(M_PI)) -
         (4.0 / M_PI) * u * std::exp(-(4.0 / M_PI) * u * u);
}

WignerFit wigner_dyson_test(std::span<const double> spacings, double alpha) {
  if (spacings.size() < 100) {
    throw std::invalid_argument("wigner_dyson_test needs >= 100 spacings");
  }
  std::vector<double> xs(spacings.begin(), spacings.end());
  std::sort(xs.begin(), xs.end());
  const double n = double(xs.size());
  auto ks_d = [&](double s0) {
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double f = wigner_dyson_cdf(xs[i], s0);
      d = std::max(d, std::fabs(double(i + 1) / n - f));
      d = std::max(d, std::fabs(f - double(i) / n));
    }
    return d;
  };

  WignerFit fit;
  fit.s0_mean = mean(xs);
  // coarse-to-fine scan for the s0 minimizing D, within 15% of the mean
  double lo = 0.85 * fit.s0_mean, hi = 1.15 * fit.s0_mean;
  double best_s0 = fit.s0_mean, best_d = ks_d(fit.s0_mean);
  for (int round = 0; round < 3; ++round) {
    const int steps = 24;
    for (int i = 0; i <= steps; ++i) {
      const double s0 = lo + (hi - lo) * double(i) / steps;
      const double d = ks_d(s0);
      if (d < best_d) {
        best_d = d;
        best_s0 = s0;
      }
    }
    const double span = (hi - lo) / steps;
    lo = best_s0 - 2.0 * span;
    hi = best_s0 + 2.0 * span;
  }
  fit.s0_fit = best_s0;
  const double rn = std::sqrt(n);
  const double lambda = (rn + 0.12 + 0.11 / rn) * best_d;
  fit.ks = KsResult{best_d, 1.0 - kolmogorov_cdf(lambda), xs.size()};
  fit.pass = fit.ks.p_value >= alpha;
  return fit;
}

double BaselineModel::p_cumulative(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= std::sqrt(2.0)) return 1.0;
  const double theta = std::asin(0.5 * t);
  return (4.0 / M_PI) * (theta - 0.25 * std::sin(4.0 * theta));
}

double BaselineModel::p_density(double t) const {
  if (t <= 0.0 || t >= std::sqrt(2.0)) return 0.0;
  const double theta = std::asin(0.5 * t);
  return (4.0 / M_PI) * (1.0 - std::cos(4.0 * theta)) /
         std::sqrt(4.0 - t * t);
}

double BaselineModel::closest_density(double t) const {
  const double p = p_density(t);
  if (p == 0.0) return 0.0;
  const double P = p_cumulative(t);
  return double(N) * p * std::exp((double(N) - 1.0) * std::log1p(-P));
}

double BaselineModel::mean_distance() const {
  // substitute u = N (4 / 3pi) t^3 in int_0^sqrt(2) exp(-N 4 t^3 / 3pi) dt
  const double u_max = 8.0 * std::sqrt(2.0) * double(N) / (3.0 * M_PI);
  const double scale = std::cbrt(3.0 * M_PI / (4.0 * double(N)));
  return scale * (1.0 / 3.0) * std::tgamma(1.0 / 3.0) *
         gamma_p(1.0 / 3.0, u_max);
}

BaselineModel bf_baseline(int L) {
  if (L < 2 || L % 2 != 0) throw std::invalid_argument("L must be even and >= 2");
  return BaselineModel{L, count_weaves_upto(L)};
}

double asymptotic_mean_error(int L) {
  return 1.021 * std::exp(-double(L) / 5.970);
}

MonteCarloMin mc_min_distance(std::uint64_t N, int trials, std::uint64_t seed) {
  if (trials < 2) throw std::invalid_argument("need at least 2 trials");
  std::vector<double> mins(trials);
  for (int k = 0; k < trials; ++k) {
    Rng rng = trial_rng(seed, std::uint64_t(k));
    double best = 2.0;
    for (std::uint64_t i = 0; i < N; ++i) {
      const Quat q = haar_quat(rng);
      // distance to the identity; Haar invariance makes the target moot
      const double d = std::sqrt(std::max(0.0, 2.0 - 2.0 * std::fabs(q.w)));
      if (d < best) best = d;
    }
    mins[k] = best;
  }
  MonteCarloMin out;
  out.mean = mean(mins);
  out.stderr_mean = stddev(mins) / std::sqrt(double(trials));
  out.trials = trials;
  return out;
}

Histogram make_log_histogram(std::span<const double> samples, int nbins) {
  if (nbins < 1) throw std::invalid_argument("nbins must be >= 1");
  double lo = 0.0, hi = 0.0;
  std::size_t positive = 0;
  for (double s : samples) {
    if (s > 0.0) {
      if (positive == 0) {
        lo = hi = s;
      } else {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      }
      ++positive;
    }
  }
  if (positive == 0) {
    throw std::invalid_argument("histogram needs positive samples");
  }
  Histogram h;
  const double llo = std::log(lo / 2.0), lhi = std::log(hi * 2.0);
  h.edges.resize(nbins + 1);
  for (int i = 0; i <= nbins; ++i) {
    h.edges[i] = std::exp(llo + (lhi - llo) * double(i) / nbins);
  }
  h.counts.assign(nbins, 0);
  for (double s : samples) {
    if (s <= 0.0) continue;
    int bin = int(std::upper_bound(h.edges.begin(), h.edges.end(), s) -
                  h.edges.begin()) - 1;
    bin = std::clamp(bin, 0, nbins - 1);
    ++h.counts[bin];
    ++h.total;
  }
  return h;
}

std::string format_histogram(const Histogram& h) {
  std::ostringstream out;
  char buf[128];
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double width = h.edges[i + 1] - h.edges[i];
    const double density =
        h.total ? double(h.counts[i]) / (double(h.total) * width) : 0.0;
    std::snprintf(buf, sizeof buf, "%.17g %.17g %llu %.17g", h.edges[i],
                  h.edges[i + 1], static_cast<unsigned long long>(h.counts[i]),
                  density);
    out << buf << "\n";
  }
  return out.str();
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("linear_fit needs matching arrays, size >= 2");
  }
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  LinearFit f;
  const double vx = sxx - sx * sx / n;
  const double vy = syy - sy * sy / n;
  const double cov = sxy - sx * sy / n;
  if (vx == 0.0) throw std::invalid_argument("degenerate x values");
  f.slope = cov / vx;
  f.intercept = (sy - f.slope * sx) / n;
  f.r2 = vy == 0.0 ? 1.0 : (cov * cov) / (vx * vy);
  return f;
}

double mean(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("mean of empty span");
  double s = 0.0;
  for (double x : v) s += x;
  return s / double(v.size());
}

double stddev(std::span<const double> v) {
  if (v.size() < 2) throw std::invalid_argument("stddev needs >= 2 values");
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / double(v.size() - 1));
}

double quantile(std::span<const double> v, double q) {
  if (v.empty()) throw std::invalid_argument("quantile of empty span");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("q outside [0, 1]");
  std::vector<double> xs(v.begin(), v.end());
  std::sort(xs.begin(), xs.end());
  const double pos = q * double(xs.size() - 1);
  const std::size_t i = std::size_t(pos);
  if (i + 1 >= xs.size()) return xs.back();
  const double frac = pos - double(i);
  return xs[i] * (1.0 - frac) + xs[i + 1] * frac;
}

}  // namespace weavehash
