#include "hgmp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hgmp {

namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("incomplete beta continued fraction did not converge");
}

double upper_quantile(double tail, double (*sf)(double, double, double), double p1, double p2) {
  if (!(tail > 0.0 && tail < 1.0)) throw std::invalid_argument("tail probability must be in (0, 1)");
  double lo = 0.0;
  double hi = 1.0;
  while (sf(hi, p1, p2) > tail) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw std::runtime_error("quantile search diverged");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (sf(mid, p1, p2) > tail ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double t_sf_accurate(double t, double df) {
  // Tail mass straight from the incomplete beta avoids 1 - cdf cancellation.
  const double x = df / (df + t * t);
  const double half = 0.5 * regularized_incomplete_beta(0.5 * df, 0.5, x);
  return t >= 0.0 ? half : 1.0 - half;
}

double t_sf(double t, double df, double) { return t_sf_accurate(t, df); }

std::vector<double> ranks(std::span<const double> xs) {
  std::vector<std::size_t> idx(xs.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return xs[i] < xs[j]; });
  std::vector<double> r(xs.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && xs[idx[j + 1]] == xs[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean of an empty sample");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
  if (xs.size() < 2) throw std::invalid_argument("variance needs at least two values");
  const double m = mean(xs);
  double ss = 0.0;
  for (const double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("incomplete beta needs positive shape parameters");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_fraction(a, b, x) / a;
  return 1.0 - front * beta_fraction(b, a, 1.0 - x) / b;
}

double students_t_cdf(double t, double df) {
  if (df <= 0.0) throw std::invalid_argument("degrees of freedom must be positive");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  return 1.0 - t_sf_accurate(t, df);
}

double fisher_f_sf(double f, double d1, double d2) {
  if (d1 <= 0.0 || d2 <= 0.0) throw std::invalid_argument("degrees of freedom must be positive");
  if (f <= 0.0) return 1.0;
  if (std::isinf(f)) return 0.0;
  return regularized_incomplete_beta(0.5 * d2, 0.5 * d1, d2 / (d2 + d1 * f));
}

double t_critical(double tail, double df) {
  if (tail >= 0.5) throw std::invalid_argument("upper t quantile needs tail < 0.5");
  return upper_quantile(tail, t_sf, df, 0.0);
}

double f_critical(double tail, double d1, double d2) { return upper_quantile(tail, fisher_f_sf, d1, d2); }

TestResult paired_t_test(std::span<const double> a, std::span<const double> b, double d0, double alpha, Sided sided) {
  if (a.size() != b.size()) throw std::invalid_argument("paired samples must have equal length");
  if (a.size() < 2) throw std::invalid_argument("paired t-test needs at least two pairs");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = b[i] - a[i] - d0;
  const double n = static_cast<double>(d.size());
  const double m = mean(d);
  const double sd = std::sqrt(variance(d));

  TestResult r;
  r.df1 = n - 1.0;
  r.critical = t_critical(sided == Sided::kOne ? alpha : alpha / 2.0, r.df1);
  if (sd == 0.0) {
    r.degenerate = true;
    r.statistic = m == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), m);
  } else {
    r.statistic = m / (sd / std::sqrt(n));
  }
  if (r.degenerate && m == 0.0) {
    r.p_value = sided == Sided::kOne ? 0.5 : 1.0;
  } else if (sided == Sided::kOne) {
    r.p_value = std::isinf(r.statistic) ? (r.statistic > 0 ? 0.0 : 1.0) : t_sf_accurate(r.statistic, r.df1);
  } else {
    r.p_value = std::isinf(r.statistic) ? 0.0 : std::min(1.0, 2.0 * t_sf_accurate(std::fabs(r.statistic), r.df1));
  }
  r.reject = r.p_value < alpha;
  return r;
}

TestResult anova_oneway(std::span<const std::vector<double>> groups, double alpha) {
  if (groups.size() < 2) throw std::invalid_argument("ANOVA needs at least two groups");
  double total = 0.0;
  std::size_t n = 0;
  for (const auto& g : groups) {
    if (g.size() < 2) throw std::invalid_argument("each ANOVA group needs at least two values");
    total += std::accumulate(g.begin(), g.end(), 0.0);
    n += g.size();
  }
  const double grand = total / static_cast<double>(n);
  double between = 0.0;
  double within = 0.0;
  for (const auto& g : groups) {
    const double m = mean(g);
    between += static_cast<double>(g.size()) * (m - grand) * (m - grand);
    for (const double x : g) within += (x - m) * (x - m);
  }
  TestResult r;
  r.df1 = static_cast<double>(groups.size() - 1);
  r.df2 = static_cast<double>(n - groups.size());
  r.critical = f_critical(alpha, r.df1, r.df2);
  if (within == 0.0) {
    r.degenerate = true;
    r.statistic = between == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    r.p_value = between == 0.0 ? 1.0 : 0.0;
  } else {
    r.statistic = (between / r.df1) / (within / r.df2);
    r.p_value = fisher_f_sf(r.statistic, r.df1, r.df2);
  }
  r.reject = r.p_value < alpha;
  return r;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("spearman needs two equal samples of size >= 2");
  const std::vector<double> rx = ranks(x);
  const std::vector<double> ry = ranks(y);
  const double mx = mean(rx);
  const double my = mean(ry);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace hgmp
