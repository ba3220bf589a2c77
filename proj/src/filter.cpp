#include "mdl/filter.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>

#include "mdl/subsets.hpp"

namespace mdl {

std::optional<double> subset_loss_ratio(const std::vector<TaggedSample>& samples,
                                        uint32_t subset_mask,
                                        const Instance& inst, int h) {
    const auto& row = inst.hypothesis(h);
    uint64_t wrong = 0, total = 0;
    for (const TaggedSample& s : samples) {
        if (s.source < 0 || !(subset_mask & (uint32_t{1} << s.source))) continue;
        ++total;
        if (row[s.x] != s.y) ++wrong;
    }
    if (total == 0) return std::nullopt;
    return static_cast<double>(wrong) / static_cast<double>(total);
}

std::optional<WorstHeavySubset> worst_heavy_subset(
    const std::vector<PerDistStats>& stats) {
    const int k = static_cast<int>(stats.size());
    if (k < 1) throw std::invalid_argument("empty stats table");
    if (k > kMaxExhaustiveSubsetK) {
        throw std::invalid_argument(
            "k too large for exhaustive subset search; lower k");
    }
    const uint32_t full = (uint32_t{1} << k) - 1;
    std::vector<double> weight(full + 1, 0.0);
    std::vector<uint64_t> wrong(full + 1, 0), total(full + 1, 0);
    std::optional<WorstHeavySubset> best;
    for (uint32_t mask = 1; mask <= full; ++mask) {
        const uint32_t low = mask & (mask - 1);
        const int i = std::countr_zero(mask);
        weight[mask] = weight[low] + stats[i].weight;
        wrong[mask] = wrong[low] + stats[i].wrong;
        total[mask] = total[low] + stats[i].total;
        if (weight[mask] < 0.5 || total[mask] == 0) continue;
        const double ratio =
            static_cast<double>(wrong[mask]) / static_cast<double>(total[mask]);
        if (!best || ratio > best->ratio ||
            (ratio == best->ratio && subset_lex_less(mask, best->subset_mask))) {
            best = WorstHeavySubset{mask, ratio};
        }
    }
    return best;
}

namespace {

// Exact analogue of worst_heavy_subset for population mode.
std::optional<WorstHeavySubset> worst_heavy_subset_exact(const Instance& inst,
                                                         const MixtureStrategy& p,
                                                         int h) {
    HeavySubsetMax m = exact_heavy_subset_max(inst, p, h);
    return WorstHeavySubset{m.subset_mask, m.ratio};
}

} // namespace

SurvivorSet filter_hypotheses(const Instance& inst,
                              const std::vector<int>& hyp_subset,
                              const Cover& cover, const MixtureStrategy& p,
                              double opt_estimate, double eps, int m2,
                              RngStream& rng, BudgetLedger& ledger,
                              EvalMode mode) {
    if (inst.k() > kMaxExhaustiveSubsetK) {
        throw std::invalid_argument(
            "k too large for exhaustive subset search; lower k");
    }
    std::size_t covered = 0;
    for (const CoverGroup& g : cover.groups) covered += g.members.size();
    if (covered != hyp_subset.size()) {
        throw std::invalid_argument("cover does not partition the hypothesis subset");
    }
    const double threshold = opt_estimate + 8.0 * eps;

    // Sampled mode: one pass over S_2 builds per-source (x, y) counts; each
    // representative's per-distribution evidence then costs O(|X|) to read.
    std::vector<std::vector<std::array<uint64_t, 2>>> counts;
    std::vector<uint64_t> totals;
    if (mode == EvalMode::Sampled) {
        if (m2 < 1) throw std::invalid_argument("m2 must be >= 1");
        const std::vector<TaggedSample> test_set =
            draw_from_mixture(inst, p, m2, rng, ledger, Phase::Filter);
        counts.assign(inst.k(), std::vector<std::array<uint64_t, 2>>(
                                    inst.domain_size(), {0, 0}));
        totals.assign(inst.k(), 0);
        for (const TaggedSample& s : test_set) {
            ++counts[s.source][s.x][s.y];
            ++totals[s.source];
        }
    }

    SurvivorSet out;
    for (const CoverGroup& group : cover.groups) {
        std::optional<WorstHeavySubset> worst;
        if (mode == EvalMode::Population) {
            worst = worst_heavy_subset_exact(inst, p, group.representative);
        } else {
            const auto& row = inst.hypothesis(group.representative);
            std::vector<PerDistStats> stats(inst.k());
            for (int i = 0; i < inst.k(); ++i) {
                stats[i].weight = p.p[i];
                stats[i].total = totals[i];
                uint64_t wrong = 0;
                for (int x = 0; x < inst.domain_size(); ++x) {
                    wrong += counts[i][x][row[x] ^ 1];
                }
                stats[i].wrong = wrong;
            }
            worst = worst_heavy_subset(stats);
        }
        if (worst && worst->ratio >= threshold) {
            out.removed_witnesses.push_back(
                {group.representative, worst->subset_mask, worst->ratio});
        } else {
            out.surviving.insert(out.surviving.end(), group.members.begin(),
                                 group.members.end());
        }
    }
    std::sort(out.surviving.begin(), out.surviving.end());
    return out;
}

} // namespace mdl
