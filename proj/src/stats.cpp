#include "mdl/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mdl::stats {

namespace {

double log_sum_exp(double a, double b) {
    if (a == -INFINITY) return b;
    if (b == -INFINITY) return a;
    double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

} // namespace

double log_binomial_coefficient(int64_t n, int64_t k) {
    if (k < 0 || k > n) return -INFINITY;
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

double binomial_upper_tail(int64_t n, double p, int64_t lo) {
    if (lo <= 0) return 1.0;
    if (lo > n) return 0.0;
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    // Sum the shorter side of the distribution.
    if (lo > static_cast<int64_t>(p * n)) {
        double acc = -INFINITY;
        for (int64_t i = lo; i <= n; ++i) {
            acc = log_sum_exp(acc, log_binomial_coefficient(n, i) + i * lp +
                                       (n - i) * lq);
        }
        return std::min(1.0, std::exp(acc));
    }
    double acc = -INFINITY;
    for (int64_t i = 0; i < lo; ++i) {
        acc = log_sum_exp(acc, log_binomial_coefficient(n, i) + i * lp +
                                   (n - i) * lq);
    }
    return std::min(1.0, std::max(0.0, 1.0 - std::exp(acc)));
}

double binomial_lower_tail(int64_t n, double p, int64_t hi) {
    if (hi >= n) return 1.0;
    if (hi < 0) return 0.0;
    return 1.0 - binomial_upper_tail(n, p, hi + 1);
}

int64_t binomial_pass_threshold(int64_t n, double p0, double tail_prob) {
    int64_t f = 0;
    while (f < n && binomial_upper_tail(n, p0, f + 1) > tail_prob) ++f;
    return f;
}

double clopper_pearson_upper(int64_t successes, int64_t n, double confidence) {
    if (successes >= n) return 1.0;
    const double alpha = 1.0 - confidence;
    double lo = static_cast<double>(successes) / n, hi = 1.0;
    // p is the smallest value with P[Bin(n,p) <= successes] <= alpha.
    for (int iter = 0; iter < 200; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (binomial_lower_tail(n, mid, successes) > alpha) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

double regularized_gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("bad gamma arguments");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) {
        // Series representation.
        double ap = a;
        double sum = 1.0 / a;
        double del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-16) break;
        }
        return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    // Continued fraction for Q(a, x), modified Lentz.
    double b = x + 1.0 - a;
    double c = 1e300;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    double q = std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    return 1.0 - q;
}

double chi2_cdf(double x, int df) {
    if (df < 1) throw std::invalid_argument("df must be >= 1");
    if (x <= 0.0) return 0.0;
    return regularized_gamma_p(0.5 * df, 0.5 * x);
}

double chi2_quantile(double prob, int df) {
    if (!(prob > 0.0 && prob < 1.0)) {
        throw std::invalid_argument("prob must be in (0,1)");
    }
    double lo = 0.0, hi = 1.0;
    while (chi2_cdf(hi, df) < prob) hi *= 2.0;
    for (int iter = 0; iter < 200; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (chi2_cdf(mid, df) < prob) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

bool chi2_test_pass(const double* observed, const double* expected, int cells,
                    double significance) {
    double stat = 0.0;
    int df = -1;
    for (int c = 0; c < cells; ++c) {
        if (expected[c] <= 0.0) {
            throw std::invalid_argument("expected count must be positive");
        }
        double d = observed[c] - expected[c];
        stat += d * d / expected[c];
        ++df;
    }
    if (df < 1) return true;
    return stat <= chi2_quantile(1.0 - significance, df);
}

} // namespace mdl::stats
