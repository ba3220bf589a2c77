#pragma once
#include <cstdint>
#include <vector>

#include "mdl/core.hpp"

namespace mdl {

// Exact minimax facts about an instance, obtained by full enumeration.
struct GroundTruth {
    double opt = 0.0; // min over hypotheses of max over distributions
    int argmin = 0;   // lowest hypothesis index attaining opt
    std::vector<double> per_hypothesis_max_loss;
    int vc_dimension = 0;
};

inline constexpr int kMaxExhaustiveSubsetK = 16;
inline constexpr int kMaxShatterDomain = 24;

// opt / argmin / per-hypothesis max losses. Deterministic lowest-index
// tie-break.
GroundTruth brute_force_opt(const Instance& inst);

// Largest m such that some m-subset of the domain is shattered. Exhaustive,
// ordered by subset size: shattered m-sets are grown from shattered
// (m-1)-sets, so the search exits as soon as a level is empty. Requires
// |X| <= kMaxShatterDomain.
int vc_dimension(const Instance& inst);

// Both of the above in one ground-truth record.
GroundTruth ground_truth(const Instance& inst);

struct HeavySubsetMax {
    uint32_t subset_mask = 0;
    double ratio = 0.0;
};

// Exhaustive maximization of sum_{i in I} p(i) l_{D_i}(h) / sum_{i in I} p(i)
// over subsets I with weight >= 1/2, using exact population losses. Ties go
// to the lexicographically smallest subset. Requires k <= 16.
HeavySubsetMax exact_heavy_subset_max(const Instance& inst,
                                      const MixtureStrategy& p, int h);

// Same maximization for a mixture classifier (losses are linear in the
// components, so survivor-level guarantees lift to their mixtures).
HeavySubsetMax exact_heavy_subset_max(const Instance& inst,
                                      const MixtureStrategy& p,
                                      const MixtureClassifier& f);

} // namespace mdl
