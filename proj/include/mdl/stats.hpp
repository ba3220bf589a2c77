#pragma once
#include <cstdint>

namespace mdl::stats {

// log C(n, k)
double log_binomial_coefficient(int64_t n, int64_t k);

// P[Bin(n, p) >= lo] computed by exact summation in log space.
double binomial_upper_tail(int64_t n, double p, int64_t lo);

// P[Bin(n, p) <= hi]
double binomial_lower_tail(int64_t n, double p, int64_t hi);

// Largest f such that P[Bin(n, p0) >= f] > tail_prob; passing a test with
// observed failures <= this count keeps the false-rejection rate below
// tail_prob when the true failure probability is at most p0. Always >= 0.
int64_t binomial_pass_threshold(int64_t n, double p0, double tail_prob);

// One-sided Clopper-Pearson upper confidence bound for the success
// probability after observing `successes` in `n` trials.
double clopper_pearson_upper(int64_t successes, int64_t n, double confidence);

// Regularized lower incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);

// Chi-square CDF and quantile (df >= 1).
double chi2_cdf(double x, int df);
double chi2_quantile(double prob, int df);

// Pearson goodness-of-fit statistic helper: returns true when the statistic
// does NOT exceed the chi2 quantile at the given significance level.
bool chi2_test_pass(const double* observed, const double* expected, int cells,
                    double significance);

} // namespace mdl::stats
