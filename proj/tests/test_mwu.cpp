#include <doctest.h>

#include <cmath>

#include "mdl/mwu.hpp"
#include "mdl/rng.hpp"

using namespace mdl;

TEST_CASE("learning rate formula") {
    // sqrt(ln 2) for n=2, T=1, B=1.
    MwuState s = mwu_init(2, 1, 1.0);
    CHECK(s.eta == doctest::Approx(0.8325546111576977).epsilon(1e-15));

    MwuState single = mwu_init(1, 10, 1.0);
    CHECK(single.eta == 0.0);
    CHECK(mwu_strategy(single).p[0] == 1.0);

    CHECK_THROWS_AS(mwu_init(0, 1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(mwu_init(2, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(mwu_init(2, 1, 0.0), std::invalid_argument);
}

TEST_CASE("strategy") {
    MwuState s = mwu_init(3, 10, 1.0);
    SUBCASE("uniform before updates") {
        for (double v : mwu_strategy(s).p) {
            CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
        }
    }
    SUBCASE("softmax of cumulative losses") {
        MwuState t = mwu_init(2, 4, 1.0);
        t.eta = 1.0;
        t.cumulative = {1.0, 0.0};
        MixtureStrategy p = mwu_strategy(t);
        // exp(-1)/(1+exp(-1)) and 1/(1+exp(-1))
        CHECK(p.p[0] == doctest::Approx(0.2689414213699951).epsilon(1e-14));
        CHECK(p.p[1] == doctest::Approx(0.7310585786300049).epsilon(1e-14));
    }
    SUBCASE("shift invariance, bit for bit on dyadic inputs") {
        MwuState t = mwu_init(4, 8, 0.5);
        t.cumulative = {0.25, 1.5, -0.75, 3.0};
        MixtureStrategy base = mwu_strategy(t);
        for (double shift : {0.5, 4.0, -2.25}) {
            MwuState u = t;
            for (double& c : u.cumulative) c += shift;
            MixtureStrategy shifted = mwu_strategy(u);
            for (std::size_t i = 0; i < base.p.size(); ++i) {
                CHECK(shifted.p[i] == base.p[i]);
            }
        }
    }
}

TEST_CASE("update") {
    MwuState s = mwu_init(2, 8, 1.0);
    SUBCASE("zero vector leaves the strategy unchanged") {
        MixtureStrategy before = mwu_strategy(s);
        mwu_update(s, {0.0, 0.0});
        MixtureStrategy after = mwu_strategy(s);
        CHECK(before.p[0] == after.p[0]);
        CHECK(s.t == 1);
    }
    SUBCASE("two updates equal one doubled update") {
        MwuState twice = mwu_init(2, 8, 1.0);
        mwu_update(twice, {0.5, 0.125});
        mwu_update(twice, {0.5, 0.125});
        MwuState once = mwu_init(2, 8, 1.0);
        mwu_update(once, {1.0, 0.25});
        MixtureStrategy a = mwu_strategy(twice), b = mwu_strategy(once);
        CHECK(a.p[0] == b.p[0]);
        CHECK(a.p[1] == b.p[1]);
    }
    SUBCASE("negated losses raise the weight of the lossy expert") {
        MwuState t = mwu_init(2, 4, 1.0);
        t.eta = 1.0;
        mwu_update(t, {-1.0, -0.0});
        MixtureStrategy p = mwu_strategy(t);
        CHECK(p.p[0] == doctest::Approx(0.7310585786300049).epsilon(1e-14));
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(mwu_update(s, {0.0}), std::invalid_argument);
        MwuState t = mwu_init(1, 1, 1.0);
        mwu_update(t, {0.3});
        CHECK_THROWS_AS(mwu_update(t, {0.3}), std::logic_error);
    }
}

namespace {

// Drives the engine against a loss-producing callback and returns the audit.
template <typename LossFn>
RegretAudit run_engine(int n, int T, double width, LossFn make_loss) {
    MwuState s = mwu_init(n, T, width);
    std::vector<MwuRound> history;
    for (int t = 0; t < T; ++t) {
        MwuRound round;
        round.p = mwu_strategy(s).p;
        round.loss = make_loss(t);
        double lo = round.loss[0], hi = round.loss[0];
        for (double v : round.loss) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        round.window_lo = lo;
        round.window_hi = lo + width;
        (void)hi;
        mwu_update(s, round.loss);
        history.push_back(std::move(round));
    }
    return mwu_regret_audit(history, width);
}

} // namespace

TEST_CASE("regret audit basics") {
    SUBCASE("constant loss vectors give zero regret") {
        RegretAudit a = run_engine(3, 50, 1.0, [](int) {
            return std::vector<double>{0.4, 0.4, 0.4};
        });
        CHECK(a.realized == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(a.width_violations.empty());
    }
    SUBCASE("single expert has zero regret") {
        RegretAudit a = run_engine(1, 20, 1.0,
                                   [](int) { return std::vector<double>{0.7}; });
        CHECK(a.realized == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(a.bound == 0.0);
    }
    SUBCASE("adversarial alternation stays under the closed-form bound") {
        RegretAudit a = run_engine(2, 100, 1.0, [](int t) {
            return t % 2 == 0 ? std::vector<double>{1.0, 0.0}
                              : std::vector<double>{0.0, 1.0};
        });
        const double bound = 2.0 * std::sqrt(std::log(2.0) * 100.0);
        CHECK(a.bound == doctest::Approx(bound).epsilon(1e-12));
        CHECK(a.realized <= bound);
    }
    SUBCASE("width violations are reported with coordinates") {
        std::vector<MwuRound> history(2);
        history[0] = {{0.5, 0.5}, {0.2, 0.4}, 0.0, 0.5};
        history[1] = {{0.5, 0.5}, {0.9, 0.4}, 0.0, 0.5};
        RegretAudit a = mwu_regret_audit(history, 0.5);
        REQUIRE(a.width_violations.size() == 1);
        CHECK(a.width_violations[0].first == 1);
        CHECK(a.width_violations[0].second == 0);
    }
}

TEST_CASE("regret bound holds on random offset loss sequences") {
    // Narrow sweep here; the acceptance suite runs the full grid.
    for (int n : {2, 8}) {
        for (int T : {10, 100}) {
            for (double B : {0.1, 1.0}) {
                for (uint64_t seed = 0; seed < 25; ++seed) {
                    RngStream rng(seed, 77);
                    RegretAudit a = run_engine(n, T, B, [&](int) {
                        const double offset = 6.0 * rng.next_double() - 3.0;
                        std::vector<double> loss(n);
                        for (double& v : loss) {
                            v = offset + B * rng.next_double();
                        }
                        return loss;
                    });
                    CHECK(a.realized <=
                          2.0 * std::sqrt(std::log(double(n)) * T) * B + 1e-9);
                    CHECK(a.width_violations.empty());
                }
            }
        }
    }
}
