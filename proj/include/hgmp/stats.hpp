#pragma once

#include <span>
#include <vector>

namespace hgmp {

enum class Sided { kOne, kTwo };

struct TestResult {
  double statistic = 0.0;
  double df1 = 0.0;
  double df2 = 0.0;  // 0 for t tests
  double p_value = 1.0;
  double critical = 0.0;
  bool reject = false;
  bool degenerate = false;  // zero variance; statistic and p-value are limits
};

double mean(std::span<const double> xs);
// Sample variance (n - 1 denominator).
double variance(std::span<const double> xs);

// I_x(a, b) by continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

double students_t_cdf(double t, double df);
double fisher_f_sf(double f, double d1, double d2);  // P(F > f)

// Upper quantiles: P(T > t) = tail, P(F > f) = tail.
double t_critical(double tail, double df);
double f_critical(double tail, double d1, double d2);

// Paired test on d = b - a - d0. One-sided tests H1: mean(b - a) > d0.
TestResult paired_t_test(std::span<const double> a, std::span<const double> b, double d0, double alpha, Sided sided);

TestResult anova_oneway(std::span<const std::vector<double>> groups, double alpha);

// Rank correlation with average ranks for ties.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace hgmp
