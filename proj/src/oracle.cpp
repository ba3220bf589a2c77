#include "mdl/oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "mdl/subsets.hpp"

namespace mdl {

GroundTruth brute_force_opt(const Instance& inst) {
    GroundTruth gt;
    gt.per_hypothesis_max_loss.resize(inst.num_hypotheses());
    gt.opt = 2.0;
    gt.argmin = 0;
    for (int h = 0; h < inst.num_hypotheses(); ++h) {
        double worst = 0.0;
        for (int i = 0; i < inst.k(); ++i) {
            worst = std::max(worst, inst.hypothesis_loss(h, i));
        }
        gt.per_hypothesis_max_loss[h] = worst;
        if (worst < gt.opt) {
            gt.opt = worst;
            gt.argmin = h;
        }
    }
    return gt;
}

namespace {

// All 2^m patterns realized on the point set `subset`?
bool shattered(const Instance& inst, const std::vector<int>& subset) {
    const std::size_t m = subset.size();
    const uint32_t want = uint32_t{1} << m;
    std::vector<bool> seen(want, false);
    uint32_t distinct = 0;
    for (const auto& row : inst.hypotheses()) {
        uint32_t pat = 0;
        for (std::size_t j = 0; j < m; ++j) {
            pat |= static_cast<uint32_t>(row[subset[j]]) << j;
        }
        if (!seen[pat]) {
            seen[pat] = true;
            if (++distinct == want) return true;
        }
    }
    return false;
}

} // namespace

int vc_dimension(const Instance& inst) {
    if (inst.domain_size() > kMaxShatterDomain) {
        throw std::invalid_argument(
            "domain too large for exhaustive shattering; supply d explicitly");
    }
    // Level m candidates extend shattered (m-1)-sets by a larger index;
    // every shattered m-set arises this way from dropping its max element.
    std::vector<std::vector<int>> frontier = {{}};
    int d = 0;
    while (true) {
        const int m = d + 1;
        if (uint64_t{1} << m > static_cast<uint64_t>(inst.num_hypotheses())) {
            return d; // fewer behaviors than patterns, nothing can shatter
        }
        std::vector<std::vector<int>> next;
        for (const auto& base : frontier) {
            const int start = base.empty() ? 0 : base.back() + 1;
            for (int x = start; x < inst.domain_size(); ++x) {
                std::vector<int> candidate = base;
                candidate.push_back(x);
                if (shattered(inst, candidate)) {
                    next.push_back(std::move(candidate));
                }
            }
        }
        if (next.empty()) return d;
        d = m;
        frontier = std::move(next);
        if (d == inst.domain_size()) return d;
    }
}

GroundTruth ground_truth(const Instance& inst) {
    GroundTruth gt = brute_force_opt(inst);
    gt.vc_dimension = vc_dimension(inst);
    return gt;
}

namespace {

HeavySubsetMax heavy_subset_max_of_losses(const MixtureStrategy& p,
                                          const std::vector<double>& losses) {
    const int k = p.k();
    if (k > kMaxExhaustiveSubsetK) {
        throw std::invalid_argument("k too large for exhaustive subset search");
    }
    const uint32_t full = (uint32_t{1} << k) - 1;
    std::vector<double> weight(full + 1, 0.0), num(full + 1, 0.0);
    HeavySubsetMax best;
    bool found = false;
    for (uint32_t mask = 1; mask <= full; ++mask) {
        const uint32_t low = mask & (mask - 1);
        const int i = std::countr_zero(mask);
        weight[mask] = weight[low] + p.p[i];
        num[mask] = num[low] + p.p[i] * losses[i];
        if (weight[mask] < 0.5) continue;
        const double ratio = num[mask] / weight[mask];
        if (!found || ratio > best.ratio ||
            (ratio == best.ratio && subset_lex_less(mask, best.subset_mask))) {
            best.subset_mask = mask;
            best.ratio = ratio;
            found = true;
        }
    }
    return best;
}

} // namespace

HeavySubsetMax exact_heavy_subset_max(const Instance& inst,
                                      const MixtureStrategy& p, int h) {
    if (h < 0 || h >= inst.num_hypotheses()) {
        throw std::out_of_range("hypothesis index out of range");
    }
    p.validate();
    std::vector<double> losses(inst.k());
    for (int i = 0; i < inst.k(); ++i) losses[i] = inst.hypothesis_loss(h, i);
    return heavy_subset_max_of_losses(p, losses);
}

HeavySubsetMax exact_heavy_subset_max(const Instance& inst,
                                      const MixtureStrategy& p,
                                      const MixtureClassifier& f) {
    p.validate();
    std::vector<double> losses(inst.k());
    for (int i = 0; i < inst.k(); ++i) losses[i] = population_loss(inst, i, f);
    return heavy_subset_max_of_losses(p, losses);
}

} // namespace mdl
