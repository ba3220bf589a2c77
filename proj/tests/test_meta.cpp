#include <doctest.h>

#include <cmath>

#include "mdl/gen.hpp"
#include "mdl/meta.hpp"
#include "mdl/oracle.hpp"

using namespace mdl;

namespace {

Instance desk_instance(uint64_t seed = 77, int k = 3) {
    GenSpec spec;
    spec.seed = seed;
    spec.domain_size = 12;
    spec.num_hypotheses = 40;
    spec.k = k;
    spec.atoms_per_distribution = 8;
    return generate_instance(spec);
}

} // namespace

TEST_CASE("recursion schedule") {
    Constants c;
    SUBCASE("depth 1 is the base learner") {
        RecursionSchedule s = recursion_schedule(3, 0.05, 0.1, 1, c);
        REQUIRE(s.levels.size() == 1);
        CHECK(s.levels[0].oracle_error == 1.0);
        CHECK(s.levels[0].eps == 0.05);
    }
    SUBCASE("depth 2 square-root descent with clamped oracle error") {
        RecursionSchedule s = recursion_schedule(3, 0.04, 0.1, 2, c);
        REQUIRE(s.levels.size() == 2);
        CHECK(s.levels[0].level == 2);
        // child error 0.04^(1/2) = 0.2; 32 * 0.2 clamps to 1
        CHECK(s.levels[1].eps == doctest::Approx(0.2).epsilon(1e-12));
        CHECK(s.levels[0].oracle_error == 1.0);
        CHECK(s.levels[1].oracle_error == 1.0);
        // confidence divides by 32 T per level
        CHECK(s.levels[1].delta ==
              doctest::Approx(0.1 / (32.0 * s.levels[0].rounds)).epsilon(1e-12));
    }
    SUBCASE("deep schedules keep eps <= oracle_error") {
        RecursionSchedule s = recursion_schedule(5, 0.05, 0.1, 4, c);
        for (const LevelPlan& plan : s.levels) {
            CHECK(plan.eps <= plan.oracle_error);
            CHECK(plan.rounds >= 1);
        }
    }
}

TEST_CASE("depth 1 recursion is exactly the boosted base learner") {
    Instance inst = desk_instance();
    GroundTruth gt = brute_force_opt(inst);
    LearnerConfig cfg;
    cfg.eps = 0.1;
    cfg.delta = 0.1;
    cfg.opt_estimate = gt.opt;
    cfg.mode = EvalMode::Sampled;
    cfg.vc_dim = vc_dimension(inst);
    cfg.depth = 1;

    RngStream r1(9, 0), r2(9, 0);
    BudgetLedger l1, l2;
    BoostResult via_meta = recursive_learn(inst, all_hypotheses(inst), cfg, r1, l1);
    BoostResult direct = boost_learn(inst, all_hypotheses(inst), cfg, base_oracle,
                                     r2, l2);
    REQUIRE(via_meta.classifier.components().size() ==
            direct.classifier.components().size());
    for (std::size_t i = 0; i < direct.classifier.components().size(); ++i) {
        CHECK(via_meta.classifier.components()[i].hypothesis ==
              direct.classifier.components()[i].hypothesis);
        CHECK(via_meta.classifier.components()[i].weight ==
              direct.classifier.components()[i].weight);
    }
    CHECK(l1.total() == l2.total());
}

TEST_CASE("depth 2 ledger matches the closed-form schedule") {
    Instance inst = desk_instance();
    GroundTruth gt = brute_force_opt(inst);
    const int d = vc_dimension(inst);
    LearnerConfig cfg;
    cfg.eps = 0.1;
    cfg.delta = 0.1;
    cfg.opt_estimate = gt.opt;
    cfg.mode = EvalMode::Sampled;
    cfg.vc_dim = d;
    cfg.depth = 2;

    RngStream rng(4, 0);
    BudgetLedger ledger;
    BoostResult r = recursive_learn(inst, all_hypotheses(inst), cfg, rng, ledger);

    const int k = inst.k();
    const Constants c;
    const RecursionSchedule s = recursion_schedule(k, cfg.eps, cfg.delta, 2, c);
    const LevelPlan& top = s.levels[0];
    const LevelPlan& inner = s.levels[1];
    const uint64_t own_per_round =
        cover_sample_size(k, d, top.eps, top.delta, c.c1) +
        filter_sample_size(k, d, top.eps, top.delta, c.c2) +
        static_cast<uint64_t>(k) *
            estimate_sample_size(k, d, top.eps, top.delta, c.c3);
    const uint64_t inner_per_round =
        cover_sample_size(k, d, inner.eps, inner.delta, c.c1) +
        filter_sample_size(k, d, inner.eps, inner.delta, c.c2) +
        static_cast<uint64_t>(k) *
            estimate_sample_size(k, d, inner.eps, inner.delta, c.c3);
    const uint64_t expected =
        static_cast<uint64_t>(top.rounds) *
        (own_per_round + static_cast<uint64_t>(inner.rounds) * inner_per_round);

    CHECK(ledger.total() == expected);
    CHECK(ledger.phase_count(Phase::OracleRecursion) ==
          static_cast<uint64_t>(top.rounds) *
              static_cast<uint64_t>(inner.rounds) * inner_per_round);
    CHECK(r.round_count == top.rounds);
    CHECK(ledger.conserved());
}

TEST_CASE("depth 2 population run passes the built-in oracle contract audit") {
    Instance inst = desk_instance();
    GroundTruth gt = brute_force_opt(inst);
    LearnerConfig cfg;
    cfg.eps = 0.05;
    cfg.delta = 0.1;
    cfg.opt_estimate = gt.opt;
    cfg.mode = EvalMode::Population;
    cfg.vc_dim = vc_dimension(inst);
    cfg.depth = 2;
    RngStream rng(0, 0);
    BudgetLedger ledger;
    BoostResult r = recursive_learn(inst, all_hypotheses(inst), cfg, rng, ledger);
    CHECK(ledger.total() == 0);
    double worst = 0.0;
    for (int i = 0; i < inst.k(); ++i) {
        worst = std::max(worst, population_loss(inst, i, r.classifier));
    }
    CHECK(worst <= gt.opt + 32 * cfg.eps + 1e-12);
}

TEST_CASE("depth-1 grid covers the unit interval at pitch eps") {
    for (double eps : {0.05, 0.1, 0.3, 0.7}) {
        const std::vector<double> grid = depth1_opt_grid(eps);
        CHECK(grid.back() == 1.0);
        for (int j = 0; j <= 1000; ++j) {
            const double opt = j / 1000.0;
            bool covered = false;
            for (double g : grid) {
                if (std::abs(g - opt) <= eps + 1e-12) covered = true;
            }
            CHECK(covered);
        }
    }
}

TEST_CASE("a learner that ignores the estimate makes the grid irrelevant") {
    Instance inst = desk_instance();
    GroundTruth gt = brute_force_opt(inst);
    WrappedLearner fixed;
    fixed.kappa = 2.0;
    fixed.run = [&gt](const Instance&, double, double, double, RngStream&,
                      BudgetLedger&) {
        return MixtureClassifier::point_mass(gt.argmin);
    };
    OptFreeConfig cfg;
    cfg.eps = 0.1;
    cfg.delta = 0.1;
    cfg.search_depth = 1;
    cfg.vc_dim = vc_dimension(inst);
    RngStream rng(0, 0);
    BudgetLedger ledger;
    OptFreeResult r = opt_free_learn(inst, cfg, fixed, rng, ledger);
    REQUIRE(r.classifier.is_point_mass());
    CHECK(r.classifier.components()[0].hypothesis == gt.argmin);
    CHECK(r.candidates.size() == depth1_opt_grid(cfg.eps).size());
    // Selection consumed k * m_sel draws per candidate.
    CHECK(ledger.phase_count(Phase::Selection) == ledger.total());
}

TEST_CASE("grid search with the real learner stays near the oracle optimum") {
    Instance inst = desk_instance();
    GroundTruth gt = brute_force_opt(inst);
    OptFreeConfig cfg;
    cfg.eps = 0.1;
    cfg.delta = 0.1;
    cfg.search_depth = 1;
    cfg.vc_dim = vc_dimension(inst);
    const WrappedLearner learner =
        wrap_recursive_learner(1, EvalMode::Sampled, cfg.constants, cfg.vc_dim);
    CHECK(learner.kappa == doctest::Approx(4.0));

    RngStream rng(11, 0);
    BudgetLedger ledger;
    OptFreeResult r = opt_free_learn(inst, cfg, learner, rng, ledger);
    double worst = 0.0;
    for (int i = 0; i < inst.k(); ++i) {
        worst = std::max(worst, population_loss(inst, i, r.classifier));
    }
    CHECK(worst <= gt.opt + 33 * cfg.eps + 1e-12);
    CHECK(r.selected >= 0);
    CHECK_FALSE(r.candidates[r.selected].aborted);
    CHECK(ledger.conserved());
}

TEST_CASE("depth-2 refinement keeps the pilot as a candidate") {
    Instance inst = desk_instance(5, 2);
    OptFreeConfig cfg;
    cfg.eps = 0.15;
    cfg.delta = 0.1;
    cfg.search_depth = 2;
    cfg.vc_dim = vc_dimension(inst);
    const WrappedLearner learner =
        wrap_recursive_learner(1, EvalMode::Sampled, cfg.constants, cfg.vc_dim);
    RngStream rng(2, 0);
    BudgetLedger ledger;
    OptFreeResult r = opt_free_learn(inst, cfg, learner, rng, ledger);
    REQUIRE(!r.candidates.empty());
    CHECK_FALSE(r.candidates[0].opt_estimate.has_value()); // the pilot
    for (std::size_t i = 1; i < r.candidates.size(); ++i) {
        REQUIRE(r.candidates[i].opt_estimate.has_value());
        CHECK(*r.candidates[i].opt_estimate >= 0.0);
    }
    CHECK(r.selected >= 0);
}

TEST_CASE("an always-aborting learner surfaces as a runtime error") {
    Instance inst = desk_instance();
    WrappedLearner broken;
    broken.run = [](const Instance&, double, double, double, RngStream&,
                    BudgetLedger&) -> MixtureClassifier {
        throw EmptySurvivorsError(0, 0.0, 1);
    };
    OptFreeConfig cfg;
    cfg.eps = 0.25;
    cfg.delta = 0.1;
    cfg.search_depth = 1;
    RngStream rng(0, 0);
    BudgetLedger ledger;
    CHECK_THROWS_AS(opt_free_learn(inst, cfg, broken, rng, ledger),
                    std::runtime_error);
}
