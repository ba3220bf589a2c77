#pragma once
#include <optional>
#include <vector>

#include "mdl/boost.hpp"

namespace mdl {

// Per-level parameters of the self-application chain, top (the requested
// depth) first. Level 1 is the base: an arbitrary-survivor oracle with
// error 1 and zero extra samples.
struct LevelPlan {
    int level = 1;
    double eps = 0.0;
    double delta = 0.0;
    double oracle_error = 1.0;
    int rounds = 0;
};

struct RecursionSchedule {
    std::vector<LevelPlan> levels;
};

// Descent rule: a level with error e hands its child e^{(j-1)/j} where j is
// the child level; the oracle error seen by level j is 32 * (child eps),
// clamped to 1 because losses live in [0,1]. Confidence divides by 32 T per
// level.
RecursionSchedule recursion_schedule(int k, double eps, double delta, int depth,
                                     const Constants& constants);

// BoostLearner applied to itself `config.depth` times. The classifier is a
// mixture over the original class; telemetry covers the top level only.
BoostResult recursive_learn(const Instance& inst,
                            const std::vector<int>& hyp_subset,
                            const LearnerConfig& config, RngStream& rng,
                            BudgetLedger& ledger);

// An opt-estimate-requiring learner plus its declared eps-exponent (the
// sample complexity scales like eps^-kappa; the grid refinement schedule
// reads it).
struct WrappedLearner {
    std::function<MixtureClassifier(const Instance&, double eps, double delta,
                                    double opt_estimate, RngStream&,
                                    BudgetLedger&)>
        run;
    double kappa = 2.0;
};

// The recursive learner at a fixed depth as a wrapped learner
// (kappa = 2 (1 + 1/depth)).
WrappedLearner wrap_recursive_learner(int depth, EvalMode mode,
                                      const Constants& constants, int vc_dim);

struct OptFreeConfig {
    double eps = 0.1;
    double delta = 0.1;
    int search_depth = 1;
    Constants constants;
    int vc_dim = 0;
};

struct CandidateOutcome {
    std::optional<double> opt_estimate; // nullopt for the pilot candidate
    bool aborted = false;
    double empirical_max_loss = 0.0; // meaningful when not aborted
};

struct OptFreeResult {
    MixtureClassifier classifier;
    std::vector<CandidateOutcome> candidates;
    int selected = -1;
};

// Depth-1 grid {eps, 2 eps, ..., 1} (last value clamped to 1). Covers [0,1]
// at pitch eps.
std::vector<double> depth1_opt_grid(double eps);

// Grid search over opt estimates with recursive refinement. Depth 1 runs
// one thread per grid value and keeps the candidate with the smallest
// estimated max-loss on fresh samples; depth s+1 first runs depth s at a
// coarser error and refines the grid around the pilot's estimated max-loss.
// Threads that abort (empty survivors: the estimate undershot) are recorded
// and excluded from selection.
OptFreeResult opt_free_learn(const Instance& inst, const OptFreeConfig& config,
                             const WrappedLearner& learner, RngStream& rng,
                             BudgetLedger& ledger);

} // namespace mdl
