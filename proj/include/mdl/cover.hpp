#pragma once
#include <cstdint>
#include <map>
#include <vector>

#include "mdl/sampling.hpp"

namespace mdl {

// Label pattern a hypothesis induces on a sample set, in sample order.
using Projection = std::vector<uint8_t>;

// One behavioral class: the hypotheses that agree on every sample point,
// represented by the lowest index among them.
struct CoverGroup {
    Projection pattern;
    int representative = 0;
    std::vector<int> members; // ascending
};

// Projection cover of a hypothesis subset on a sample set S_1.
struct Cover {
    std::vector<TaggedSample> sample_set;
    std::vector<CoverGroup> groups; // ordered by representative index
    std::map<int, int> group_of;    // hypothesis -> index into groups

    std::size_t size() const { return groups.size(); }
    int representative_of(int hypothesis) const {
        return groups[group_of.at(hypothesis)].representative;
    }
};

// Partition of hyp_subset by agreement on S. Deterministic: groups keyed by
// pattern, members ascending. S must be nonempty.
std::map<Projection, std::vector<int>> project(
    const Instance& inst, const std::vector<int>& hyp_subset,
    const std::vector<TaggedSample>& samples);

// Draws m1 points from the p-mixture and builds the cover; the
// representative of each group is its lowest hypothesis index.
Cover construct_cover(const Instance& inst, const std::vector<int>& hyp_subset,
                      const MixtureStrategy& p, int m1, RngStream& rng,
                      BudgetLedger& ledger);

// Exact-evaluation variant: the sample set is one point per domain element,
// so groups are exactly the distinct behaviors. Draws nothing.
Cover construct_cover_population(const Instance& inst,
                                 const std::vector<int>& hyp_subset);

// sum_{i=0}^{d} C(n, i), saturating at UINT64_MAX.
uint64_t sauer_shelah_bound(int n, int d);

} // namespace mdl
