#include "mdl/cover.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mdl {

std::map<Projection, std::vector<int>> project(
    const Instance& inst, const std::vector<int>& hyp_subset,
    const std::vector<TaggedSample>& samples) {
    if (samples.empty()) throw std::invalid_argument("empty sample set");
    std::map<Projection, std::vector<int>> groups;
    Projection pattern(samples.size());
    for (int h : hyp_subset) {
        const auto& row = inst.hypothesis(h);
        for (std::size_t j = 0; j < samples.size(); ++j) {
            pattern[j] = row[samples[j].x];
        }
        groups[pattern].push_back(h);
    }
    for (auto& [_, members] : groups) std::sort(members.begin(), members.end());
    return groups;
}

namespace {

Cover cover_from_samples(const Instance& inst, const std::vector<int>& hyp_subset,
                         std::vector<TaggedSample> samples) {
    auto partition = project(inst, hyp_subset, samples);
    Cover cover;
    cover.sample_set = std::move(samples);
    cover.groups.reserve(partition.size());
    for (auto& [pattern, members] : partition) {
        CoverGroup g;
        g.pattern = pattern;
        g.representative = members.front(); // lowest index, deterministic
        g.members = std::move(members);
        cover.groups.push_back(std::move(g));
    }
    std::sort(cover.groups.begin(), cover.groups.end(),
              [](const CoverGroup& a, const CoverGroup& b) {
                  return a.representative < b.representative;
              });
    for (std::size_t gi = 0; gi < cover.groups.size(); ++gi) {
        for (int h : cover.groups[gi].members) {
            cover.group_of[h] = static_cast<int>(gi);
        }
    }
    return cover;
}

} // namespace

Cover construct_cover(const Instance& inst, const std::vector<int>& hyp_subset,
                      const MixtureStrategy& p, int m1, RngStream& rng,
                      BudgetLedger& ledger) {
    if (m1 < 1) throw std::invalid_argument("m1 must be >= 1");
    if (hyp_subset.empty()) throw std::invalid_argument("empty hypothesis subset");
    std::vector<TaggedSample> samples =
        draw_from_mixture(inst, p, m1, rng, ledger, Phase::Cover);
    return cover_from_samples(inst, hyp_subset, std::move(samples));
}

Cover construct_cover_population(const Instance& inst,
                                 const std::vector<int>& hyp_subset) {
    if (hyp_subset.empty()) throw std::invalid_argument("empty hypothesis subset");
    std::vector<TaggedSample> samples;
    samples.reserve(inst.domain_size());
    for (int x = 0; x < inst.domain_size(); ++x) {
        samples.push_back({x, 0, kNoSource});
    }
    return cover_from_samples(inst, hyp_subset, std::move(samples));
}

namespace {

// a + b, saturating.
uint64_t sat_add(uint64_t a, uint64_t b) {
    return a > std::numeric_limits<uint64_t>::max() - b
               ? std::numeric_limits<uint64_t>::max()
               : a + b;
}

} // namespace

uint64_t sauer_shelah_bound(int n, int d) {
    if (n < 0 || d < 0) throw std::invalid_argument("n and d must be >= 0");
    if (d >= n) {
        // Full power set: 2^n.
        if (n >= 64) return std::numeric_limits<uint64_t>::max();
        return uint64_t{1} << n;
    }
    uint64_t sum = 1; // C(n, 0)
    __uint128_t binom = 1;
    for (int i = 1; i <= d; ++i) {
        binom = binom * static_cast<unsigned>(n - i + 1) / static_cast<unsigned>(i);
        if (binom > std::numeric_limits<uint64_t>::max()) {
            return std::numeric_limits<uint64_t>::max();
        }
        sum = sat_add(sum, static_cast<uint64_t>(binom));
        if (sum == std::numeric_limits<uint64_t>::max()) return sum;
    }
    return sum;
}

} // namespace mdl
