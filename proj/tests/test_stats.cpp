#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "mdl/stats.hpp"

using namespace mdl::stats;

TEST_CASE("binomial tails against hand-counted values") {
    // P[Bin(10, 1/2) >= 8] = (45 + 10 + 1)/1024
    CHECK(binomial_upper_tail(10, 0.5, 8) ==
          doctest::Approx(56.0 / 1024.0).epsilon(1e-12));
    CHECK(binomial_upper_tail(10, 0.5, 0) == 1.0);
    CHECK(binomial_upper_tail(10, 0.5, 11) == 0.0);
    CHECK(binomial_lower_tail(10, 0.5, 10) == 1.0);
    // complement identity
    CHECK(binomial_lower_tail(10, 0.3, 4) + binomial_upper_tail(10, 0.3, 5) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pass threshold is the largest count the budget explains") {
    // Bin(200, 0.1): mean 20; the 1% upper tail starts near 31.
    const int64_t f = binomial_pass_threshold(200, 0.1, 0.01);
    CHECK(binomial_upper_tail(200, 0.1, f) > 0.01);
    CHECK(binomial_upper_tail(200, 0.1, f + 1) <= 0.01);
    CHECK(f >= 25);
    CHECK(f <= 40);
    // A tiny budget admits zero failures.
    CHECK(binomial_pass_threshold(500, 1e-5, 0.01) == 0);
}

TEST_CASE("clopper-pearson upper bound") {
    // Zero successes in n trials: closed form 1 - alpha^(1/n).
    const double expect = 1.0 - std::exp(std::log(0.01) / 500.0);
    CHECK(clopper_pearson_upper(0, 500, 0.99) ==
          doctest::Approx(expect).epsilon(1e-6));
    CHECK(clopper_pearson_upper(500, 500, 0.99) == 1.0);
    // Monotone in successes.
    CHECK(clopper_pearson_upper(5, 500, 0.99) >
          clopper_pearson_upper(0, 500, 0.99));
}

TEST_CASE("chi-square quantiles") {
    // df=2 has the closed form -2 ln(alpha).
    CHECK(chi2_quantile(0.999, 2) ==
          doctest::Approx(-2.0 * std::log(0.001)).epsilon(1e-9));
    // Round-trip through the CDF.
    for (int df : {1, 3, 7, 15}) {
        const double q = chi2_quantile(0.999, df);
        CHECK(chi2_cdf(q, df) == doctest::Approx(0.999).epsilon(1e-9));
    }
    CHECK(chi2_quantile(0.999, 1) == doctest::Approx(10.8276).epsilon(1e-4));
}

TEST_CASE("chi-square goodness of fit accepts the true distribution") {
    const double expected[3] = {500.0, 300.0, 200.0};
    const double observed[3] = {496.0, 310.0, 194.0};
    CHECK(chi2_test_pass(observed, expected, 3, 0.001));
    const double way_off[3] = {900.0, 50.0, 50.0};
    CHECK_FALSE(chi2_test_pass(way_off, expected, 3, 0.001));
}
