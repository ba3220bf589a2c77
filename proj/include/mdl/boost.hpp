#pragma once
#include <functional>
#include <string>
#include <vector>

#include "mdl/filter.hpp"
#include "mdl/mwu.hpp"

namespace mdl {

struct Constants {
    double c1 = 1.0; // cover sample multiplier
    double c2 = 1.0; // filter sample multiplier
    double c3 = 1.0; // estimate / selection sample multiplier
    double cT = 1.0; // round count multiplier
};

struct LearnerConfig {
    double eps = 0.1;
    double delta = 0.1;
    double opt_estimate = 0.0; // guess for the minimax loss, in [0,1]
    double oracle_error = 1.0; // error parameter of the round oracle
    Constants constants;
    EvalMode mode = EvalMode::Sampled;
    int vc_dim = 0;  // of the parent class; fixed input, not recomputed
    int depth = 1;   // recursion depth, consumed by the meta layer

    // Enforces 0 < eps <= oracle_error <= 1, delta in (0,1),
    // opt_estimate in [0,1]; a nontrivial oracle (error < 1) additionally
    // requires eps <= oracle_error / 32.
    void validate() const;
};

// ln(max(k*d/(eps*delta), e)); the shared logarithmic factor of every
// sample-size formula. d enters as max(d, 1) so degenerate classes work.
double log_term(int k, int d, double eps, double delta);

int cover_sample_size(int k, int d, double eps, double delta, double c1);
int filter_sample_size(int k, int d, double eps, double delta, double c2);
int estimate_sample_size(int k, int d, double eps, double delta, double c3);
// ceil(cT * ln(k) * (oracle_error/eps)^2), at least 1.
int round_count(int k, double oracle_error, double eps, double cT);

// Contract of the per-round learner: returns a mixture supported on the
// surviving subset. The ledger passed in attributes everything the oracle
// draws to the oracle-recursion phase.
using MultiLearnerOracle = std::function<MixtureClassifier(
    const Instance&, const std::vector<int>& surviving, double opt_estimate,
    RngStream&, BudgetLedger&)>;

// Level-1 oracle: the lowest-index surviving hypothesis, zero samples.
MixtureClassifier base_oracle(const Instance& inst,
                              const std::vector<int>& surviving,
                              double opt_estimate, RngStream& rng,
                              BudgetLedger& ledger);

// Per-distribution empirical losses of f, floored at
// opt_estimate - oracle_error. Sampled mode draws m3 points from each
// distribution; population mode uses exact losses.
LossVector estimate_losses(const Instance& inst, const MixtureClassifier& f,
                           double opt_estimate, double oracle_error, int m3,
                           RngStream& rng, BudgetLedger& ledger, EvalMode mode);

struct RoundTelemetry {
    std::vector<double> p;
    std::vector<double> loss;
    double window_lo = 0.0;
    double window_hi = 0.0;
    int cover_size = 0;
    int survivor_count = 0;
    bool width_ok = true;
    std::vector<RemovalWitness> removed;
};

struct BoostResult {
    MixtureClassifier classifier;
    std::vector<RoundTelemetry> rounds;
    double regret_realized = 0.0;
    double regret_bound = 0.0;
    double window_width = 0.0;
    int round_count = 0;
};

// A round left no hypothesis standing; the strongest explanation is an
// opt_estimate below the achievable minimax loss, which the grid search
// upstream exploits.
struct EmptySurvivorsError : std::runtime_error {
    EmptySurvivorsError(int round, double opt_estimate, std::size_t cover_size);
    int round;
    double opt_estimate;
};

// The T-round loop: strategy -> cover -> filter -> oracle -> floored loss
// estimate -> update with the negated losses so heavy-loss distributions
// gain weight. Output is the uniform average of the round classifiers,
// flattened into one mixture.
BoostResult boost_learn(const Instance& inst, const std::vector<int>& hyp_subset,
                        const LearnerConfig& config,
                        const MultiLearnerOracle& oracle, RngStream& rng,
                        BudgetLedger& ledger);

// Convenience: all hypothesis indices of the instance.
std::vector<int> all_hypotheses(const Instance& inst);

} // namespace mdl
