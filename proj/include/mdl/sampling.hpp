#pragma once
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mdl/core.hpp"
#include "mdl/rng.hpp"

namespace mdl {

// A labeled draw plus the index of the distribution that produced it.
// Mixture draws record the mixture component that was selected; direct
// single-distribution draws carry kNoSource.
struct TaggedSample {
    int32_t x = 0;
    int32_t y = 0;
    int32_t source = -1;
};
constexpr int32_t kNoSource = -1;

enum class Phase { Cover = 0, Filter, Estimate, OracleRecursion, Selection };
constexpr int kNumPhases = 5;
const char* phase_name(Phase phase);

// Exact accounting of every sample drawn in a run. total == sum over
// distributions == sum over phases, and counters only grow.
class BudgetLedger {
public:
    void record(Phase phase, int dist_index, uint64_t n);

    uint64_t total() const { return total_; }
    uint64_t phase_count(Phase phase) const {
        return per_phase_[static_cast<int>(phase)];
    }
    const std::vector<uint64_t>& per_distribution() const { return per_dist_; }
    const std::array<uint64_t, kNumPhases>& per_phase() const { return per_phase_; }

    void merge(const BudgetLedger& other);
    bool conserved() const;

    // While a guard is alive every record lands in the override phase; the
    // outermost guard wins so nested recursions attribute to one bucket.
    class PhaseOverride {
    public:
        PhaseOverride(BudgetLedger& ledger, Phase phase);
        ~PhaseOverride();
        PhaseOverride(const PhaseOverride&) = delete;
        PhaseOverride& operator=(const PhaseOverride&) = delete;

    private:
        BudgetLedger& ledger_;
        bool engaged_;
    };

private:
    uint64_t total_ = 0;
    std::vector<uint64_t> per_dist_;
    std::array<uint64_t, kNumPhases> per_phase_{};
    bool override_active_ = false;
    Phase override_phase_ = Phase::Cover;
};

// n i.i.d. draws via inverse CDF over the canonically ordered atoms.
// dist_index is only used for ledger attribution; samples are tagged
// kNoSource because they did not come through a mixture.
std::vector<TaggedSample> draw_from(const DiscreteDistribution& dist, int n,
                                    RngStream& rng, BudgetLedger& ledger,
                                    Phase phase, int dist_index = 0);

// Hierarchical mixture draw: source i ~ p, then (x, y) ~ D_i. Each sample
// records its source and the ledger attributes the draw to distribution i.
std::vector<TaggedSample> draw_from_mixture(const Instance& inst,
                                            const MixtureStrategy& p, int n,
                                            RngStream& rng, BudgetLedger& ledger,
                                            Phase phase);

// Mean over samples of Pr[f(x) != y]; for mixtures the per-sample
// expectation is computed exactly instead of flipping f's internal coin,
// which keeps the estimator unbiased with strictly less variance.
double empirical_loss(const std::vector<TaggedSample>& samples,
                      const Instance& inst, const MixtureClassifier& f);

// Same mean evaluated from a precomputed Pr[f(x)=1] table (hot path).
double empirical_loss_from_probabilities(const std::vector<TaggedSample>& samples,
                                         const std::vector<double>& prob_one);

} // namespace mdl
