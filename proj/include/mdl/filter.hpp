#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "mdl/cover.hpp"
#include "mdl/oracle.hpp"

namespace mdl {

// Outcome of removing one cover group: the representative that failed the
// test, the heavy subset that witnessed it, and the offending ratio.
struct RemovalWitness {
    int representative = 0;
    uint32_t subset_mask = 0;
    double ratio = 0.0;
};

struct SurvivorSet {
    std::vector<int> surviving; // ascending; union of whole cover groups
    std::vector<RemovalWitness> removed_witnesses;
    bool empty() const { return surviving.empty(); }
};

// Per-distribution evidence about one hypothesis on a provenance-tagged
// sample set.
struct PerDistStats {
    double weight = 0.0;   // p(i)
    uint64_t wrong = 0;    // samples from i that h misclassifies
    uint64_t total = 0;    // samples from i
};

// Misclassified fraction of the samples whose source lies in `subset_mask`.
// nullopt when no sample has a source in the subset; an undefined ratio is
// evidence of nothing and never triggers removal.
std::optional<double> subset_loss_ratio(const std::vector<TaggedSample>& samples,
                                        uint32_t subset_mask,
                                        const Instance& inst, int h);

struct WorstHeavySubset {
    uint32_t subset_mask = 0;
    double ratio = 0.0;
};

// Exhaustively maximizes the empirical subset loss ratio over subsets with
// weight >= 1/2 and at least one sample. Ties break toward the
// lexicographically smallest subset. Requires k <= 16.
std::optional<WorstHeavySubset> worst_heavy_subset(
    const std::vector<PerDistStats>& stats);

enum class EvalMode { Sampled, Population };

// Removes every cover group whose representative has some heavy subset with
// empirical loss ratio >= opt_estimate + 8*eps; survivors are returned as a
// union of intact groups. Sampled mode draws m2 test points from the
// p-mixture; population mode replaces the empirical ratios with exact ones
// and draws nothing. An empty survivor set is a legal return value.
SurvivorSet filter_hypotheses(const Instance& inst,
                              const std::vector<int>& hyp_subset,
                              const Cover& cover, const MixtureStrategy& p,
                              double opt_estimate, double eps, int m2,
                              RngStream& rng, BudgetLedger& ledger,
                              EvalMode mode);

} // namespace mdl
