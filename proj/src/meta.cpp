#include "mdl/meta.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mdl/oracle.hpp"

namespace mdl {

namespace {

double child_eps(double eps, int child_level) {
    return std::pow(eps, static_cast<double>(child_level) / (child_level + 1));
}

double clamped_oracle_error(int level, double eps) {
    if (level <= 1) return 1.0;
    return std::min(1.0, 32.0 * child_eps(eps, level - 1));
}

} // namespace

RecursionSchedule recursion_schedule(int k, double eps, double delta, int depth,
                                     const Constants& constants) {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    RecursionSchedule schedule;
    double level_eps = eps;
    double level_delta = delta;
    for (int level = depth; level >= 1; --level) {
        LevelPlan plan;
        plan.level = level;
        plan.eps = level_eps;
        plan.delta = level_delta;
        plan.oracle_error = clamped_oracle_error(level, level_eps);
        plan.rounds = round_count(k, plan.oracle_error, level_eps, constants.cT);
        schedule.levels.push_back(plan);
        if (level > 1) {
            level_delta = level_delta / (32.0 * plan.rounds);
            level_eps = child_eps(level_eps, level - 1);
        }
    }
    return schedule;
}

BoostResult recursive_learn(const Instance& inst,
                            const std::vector<int>& hyp_subset,
                            const LearnerConfig& config, RngStream& rng,
                            BudgetLedger& ledger) {
    LearnerConfig top = config;
    top.oracle_error = clamped_oracle_error(config.depth, config.eps);
    top.validate();

    if (config.depth == 1) {
        return boost_learn(inst, hyp_subset, top, base_oracle, rng, ledger);
    }

    const int T = round_count(inst.k(), top.oracle_error, top.eps,
                              top.constants.cT);
    LearnerConfig child = config;
    child.depth = config.depth - 1;
    child.eps = child_eps(config.eps, config.depth - 1);
    child.delta = config.delta / (32.0 * T);

    MultiLearnerOracle oracle = [&inst, child, &top](const Instance&,
                                                     const std::vector<int>& surviving,
                                                     double opt_estimate,
                                                     RngStream& oracle_rng,
                                                     BudgetLedger& oracle_ledger) {
        LearnerConfig spawned = child;
        spawned.opt_estimate = opt_estimate;
        MixtureClassifier f = recursive_learn(inst, surviving, spawned,
                                              oracle_rng, oracle_ledger)
                                  .classifier;
        if (spawned.mode == EvalMode::Population) {
            // The handed-back classifier must honor the error contract the
            // parent assumes: max loss within oracle_error of the best
            // surviving hypothesis. Exact losses make this checkable.
            double best = 2.0;
            for (int h : surviving) {
                double worst = 0.0;
                for (int i = 0; i < inst.k(); ++i) {
                    worst = std::max(worst, inst.hypothesis_loss(h, i));
                }
                best = std::min(best, worst);
            }
            double achieved = 0.0;
            for (int i = 0; i < inst.k(); ++i) {
                achieved = std::max(achieved, population_loss(inst, i, f));
            }
            if (achieved > best + top.oracle_error + 1e-9) {
                throw std::logic_error("recursive oracle violated its error contract");
            }
        }
        return f;
    };
    return boost_learn(inst, hyp_subset, top, oracle, rng, ledger);
}

WrappedLearner wrap_recursive_learner(int depth, EvalMode mode,
                                      const Constants& constants, int vc_dim) {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    WrappedLearner w;
    w.kappa = 2.0 * (1.0 + 1.0 / depth);
    w.run = [depth, mode, constants, vc_dim](const Instance& inst, double eps,
                                             double delta, double opt_estimate,
                                             RngStream& rng,
                                             BudgetLedger& ledger) {
        LearnerConfig cfg;
        cfg.eps = eps;
        cfg.delta = delta;
        cfg.opt_estimate = opt_estimate;
        cfg.mode = mode;
        cfg.constants = constants;
        cfg.vc_dim = vc_dim;
        cfg.depth = depth;
        return recursive_learn(inst, all_hypotheses(inst), cfg, rng, ledger)
            .classifier;
    };
    return w;
}

std::vector<double> depth1_opt_grid(double eps) {
    if (!(eps > 0.0 && eps <= 1.0)) {
        throw std::invalid_argument("eps must be in (0, 1]");
    }
    const int count = static_cast<int>(std::ceil(1.0 / eps));
    std::vector<double> grid(count);
    for (int b = 1; b <= count; ++b) {
        grid[b - 1] = std::min(b * eps, 1.0);
    }
    return grid;
}

namespace {

// Fresh estimate of max_i loss(f) on m_sel samples per distribution.
double estimated_max_loss(const Instance& inst, const MixtureClassifier& f,
                          int m_sel, RngStream& rng, BudgetLedger& ledger) {
    const std::vector<double> q = predict_one_probabilities(inst, f);
    double worst = 0.0;
    for (int i = 0; i < inst.k(); ++i) {
        const std::vector<TaggedSample> s = draw_from(
            inst.distribution(i), m_sel, rng, ledger, Phase::Selection, i);
        worst = std::max(worst, empirical_loss_from_probabilities(s, q));
    }
    return worst;
}

int selection_sample_size(int k, int candidates, double eps, double delta,
                          double c3) {
    const double arg =
        static_cast<double>(k) * std::max(candidates, 1) / (eps * delta);
    const double log_factor = std::log(std::max(arg, std::exp(1.0)));
    return std::max(1, static_cast<int>(std::ceil(c3 * log_factor / (eps * eps))));
}

struct RawCandidate {
    std::optional<double> opt_estimate;
    std::optional<MixtureClassifier> classifier; // empty when aborted
};

OptFreeResult select_best(const Instance& inst,
                          std::vector<RawCandidate> raw, double eps,
                          double delta, double c3, RngStream& selection_rng,
                          BudgetLedger& ledger) {
    const int m_sel = selection_sample_size(inst.k(), static_cast<int>(raw.size()),
                                            eps, delta, c3);
    OptFreeResult result;
    result.candidates.reserve(raw.size());
    double best_loss = 2.0;
    for (std::size_t c = 0; c < raw.size(); ++c) {
        CandidateOutcome outcome;
        outcome.opt_estimate = raw[c].opt_estimate;
        if (!raw[c].classifier) {
            outcome.aborted = true;
        } else {
            outcome.empirical_max_loss = estimated_max_loss(
                inst, *raw[c].classifier, m_sel, selection_rng, ledger);
            if (outcome.empirical_max_loss < best_loss) {
                best_loss = outcome.empirical_max_loss;
                result.selected = static_cast<int>(c);
            }
        }
        result.candidates.push_back(outcome);
    }
    if (result.selected < 0) {
        throw std::runtime_error(
            "every grid thread aborted; no opt estimate admitted survivors");
    }
    result.classifier = *raw[result.selected].classifier;
    return result;
}

} // namespace

OptFreeResult opt_free_learn(const Instance& inst, const OptFreeConfig& config,
                             const WrappedLearner& learner, RngStream& rng,
                             BudgetLedger& ledger) {
    if (config.search_depth < 1) {
        throw std::invalid_argument("search_depth must be >= 1");
    }
    RngStream selection_rng = rng.child(3);

    if (config.search_depth == 1) {
        const std::vector<double> grid = depth1_opt_grid(config.eps);
        const double thread_delta = config.delta / (2.0 * grid.size());
        std::vector<RawCandidate> raw;
        raw.reserve(grid.size());
        for (std::size_t b = 0; b < grid.size(); ++b) {
            RawCandidate cand;
            cand.opt_estimate = grid[b];
            RngStream thread_rng = rng.child(100 + b);
            try {
                cand.classifier = learner.run(inst, config.eps, thread_delta,
                                              grid[b], thread_rng, ledger);
            } catch (const EmptySurvivorsError&) {
                // Estimate undershot the minimax loss; drop the thread.
            }
            raw.push_back(std::move(cand));
        }
        return select_best(inst, std::move(raw), config.eps, config.delta,
                           config.constants.c3, selection_rng, ledger);
    }

    // Refinement step: a coarser full search pins down the scale, then a
    // short grid descends from the pilot's estimated max-loss.
    const int s = config.search_depth - 1;
    const double kappa = learner.kappa;
    const double exponent = (kappa + std::pow(kappa, -s)) /
                            (kappa + std::pow(kappa, -(s - 1)));
    const double pilot_eps = std::pow(config.eps, exponent);

    OptFreeConfig pilot_config = config;
    pilot_config.eps = pilot_eps;
    pilot_config.delta = config.delta / 2.0;
    pilot_config.search_depth = config.search_depth - 1;
    RngStream pilot_rng = rng.child(1);
    const OptFreeResult pilot =
        opt_free_learn(inst, pilot_config, learner, pilot_rng, ledger);

    const int n2 = selection_sample_size(inst.k(), 1, config.eps, config.delta,
                                         config.constants.c3);
    RngStream pilot_eval_rng = rng.child(2);
    const double pilot_max_loss = estimated_max_loss(
        inst, pilot.classifier, n2, pilot_eval_rng, ledger);

    std::vector<RawCandidate> raw;
    raw.push_back({std::nullopt, pilot.classifier});

    const int refinements =
        std::max(1, static_cast<int>(std::ceil(33.0 * pilot_eps / config.eps)));
    const double thread_delta = config.delta / (2.0 * refinements);
    for (int b = 1; b <= refinements; ++b) {
        const double opt_estimate = pilot_max_loss - b * config.eps;
        if (opt_estimate < 0.0) break; // the minimax loss is never negative
        RawCandidate cand;
        cand.opt_estimate = opt_estimate;
        RngStream thread_rng = rng.child(100 + b);
        try {
            cand.classifier = learner.run(inst, config.eps, thread_delta,
                                          opt_estimate, thread_rng, ledger);
        } catch (const EmptySurvivorsError&) {
        }
        raw.push_back(std::move(cand));
    }
    return select_best(inst, std::move(raw), config.eps, config.delta,
                       config.constants.c3, selection_rng, ledger);
}

} // namespace mdl
