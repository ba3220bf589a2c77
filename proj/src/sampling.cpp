#include "mdl/sampling.hpp"

#include <algorithm>
#include <stdexcept>

namespace mdl {

const char* phase_name(Phase phase) {
    switch (phase) {
        case Phase::Cover: return "cover";
        case Phase::Filter: return "filter";
        case Phase::Estimate: return "estimate";
        case Phase::OracleRecursion: return "oracle_recursion";
        case Phase::Selection: return "selection";
    }
    return "unknown";
}

void BudgetLedger::record(Phase phase, int dist_index, uint64_t n) {
    if (n == 0) return;
    if (dist_index < 0) throw std::invalid_argument("ledger needs a distribution index");
    if (per_dist_.size() <= static_cast<std::size_t>(dist_index)) {
        per_dist_.resize(dist_index + 1, 0);
    }
    const Phase effective = override_active_ ? override_phase_ : phase;
    per_dist_[dist_index] += n;
    per_phase_[static_cast<int>(effective)] += n;
    total_ += n;
}

void BudgetLedger::merge(const BudgetLedger& other) {
    if (per_dist_.size() < other.per_dist_.size()) {
        per_dist_.resize(other.per_dist_.size(), 0);
    }
    for (std::size_t i = 0; i < other.per_dist_.size(); ++i) {
        per_dist_[i] += other.per_dist_[i];
    }
    for (int ph = 0; ph < kNumPhases; ++ph) per_phase_[ph] += other.per_phase_[ph];
    total_ += other.total_;
}

bool BudgetLedger::conserved() const {
    uint64_t by_dist = 0, by_phase = 0;
    for (uint64_t v : per_dist_) by_dist += v;
    for (uint64_t v : per_phase_) by_phase += v;
    return by_dist == total_ && by_phase == total_;
}

BudgetLedger::PhaseOverride::PhaseOverride(BudgetLedger& ledger, Phase phase)
    : ledger_(ledger), engaged_(!ledger.override_active_) {
    if (engaged_) {
        ledger_.override_active_ = true;
        ledger_.override_phase_ = phase;
    }
}

BudgetLedger::PhaseOverride::~PhaseOverride() {
    if (engaged_) ledger_.override_active_ = false;
}

namespace {

// First atom whose CDF exceeds u; u in [0,1).
inline std::size_t inverse_cdf_index(const std::vector<double>& cdf, double u) {
    return static_cast<std::size_t>(
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
}

} // namespace

std::vector<TaggedSample> draw_from(const DiscreteDistribution& dist, int n,
                                    RngStream& rng, BudgetLedger& ledger,
                                    Phase phase, int dist_index) {
    if (n < 0) throw std::invalid_argument("negative sample count");
    std::vector<TaggedSample> out;
    out.reserve(n);
    const auto& atoms = dist.atoms();
    const auto& cdf = dist.cdf();
    for (int j = 0; j < n; ++j) {
        std::size_t idx = inverse_cdf_index(cdf, rng.next_double());
        if (idx >= atoms.size()) idx = atoms.size() - 1;
        out.push_back({atoms[idx].x, atoms[idx].y, kNoSource});
    }
    ledger.record(phase, dist_index, static_cast<uint64_t>(n));
    return out;
}

std::vector<TaggedSample> draw_from_mixture(const Instance& inst,
                                            const MixtureStrategy& p, int n,
                                            RngStream& rng, BudgetLedger& ledger,
                                            Phase phase) {
    if (n < 0) throw std::invalid_argument("negative sample count");
    p.validate();
    if (p.k() != inst.k()) throw std::invalid_argument("strategy length != k");
    std::vector<double> strategy_cdf(p.p.size());
    double running = 0.0;
    for (std::size_t i = 0; i < p.p.size(); ++i) {
        running += p.p[i];
        strategy_cdf[i] = running;
    }
    strategy_cdf.back() = 1.0;

    std::vector<uint64_t> per_dist(p.p.size(), 0);
    std::vector<TaggedSample> out;
    out.reserve(n);
    for (int j = 0; j < n; ++j) {
        std::size_t i = inverse_cdf_index(strategy_cdf, rng.next_double());
        if (i >= p.p.size()) i = p.p.size() - 1;
        const DiscreteDistribution& d = inst.distribution(static_cast<int>(i));
        std::size_t idx = inverse_cdf_index(d.cdf(), rng.next_double());
        if (idx >= d.atoms().size()) idx = d.atoms().size() - 1;
        out.push_back({d.atoms()[idx].x, d.atoms()[idx].y, static_cast<int32_t>(i)});
        ++per_dist[i];
    }
    for (std::size_t i = 0; i < per_dist.size(); ++i) {
        ledger.record(phase, static_cast<int>(i), per_dist[i]);
    }
    return out;
}

double empirical_loss_from_probabilities(const std::vector<TaggedSample>& samples,
                                         const std::vector<double>& prob_one) {
    if (samples.empty()) throw std::invalid_argument("empty sample list");
    double sum = 0.0;
    for (const TaggedSample& s : samples) {
        const double q = prob_one[s.x];
        sum += s.y == 1 ? 1.0 - q : q;
    }
    return sum / static_cast<double>(samples.size());
}

double empirical_loss(const std::vector<TaggedSample>& samples,
                      const Instance& inst, const MixtureClassifier& f) {
    if (samples.empty()) throw std::invalid_argument("empty sample list");
    return empirical_loss_from_probabilities(samples,
                                             predict_one_probabilities(inst, f));
}

} // namespace mdl
