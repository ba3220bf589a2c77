#pragma once
#include <vector>

#include "mdl/core.hpp"

namespace mdl {

// Multiplicative-weights state over n experts. The engine is
// loss-minimizing: p_t(i) ~ exp(-eta * cumulative(i)). Callers that want
// the gain-maximizing direction feed negated losses.
struct MwuState {
    int n = 0;
    int horizon = 0;
    double eta = 0.0;
    std::vector<double> cumulative;
    int t = 0;
};

// eta = sqrt(ln(n)/T)/B (natural log). Throws on n < 1, T < 1 or B <= 0.
MwuState mwu_init(int n, int horizon, double width);

// Softmax of -eta * (cumulative - min cumulative); the max-shift keeps the
// exponentials in range and makes the strategy invariant to constant
// per-round offsets.
MixtureStrategy mwu_strategy(const MwuState& state);

// cumulative += loss, t += 1. Throws on length mismatch or t >= horizon.
void mwu_update(MwuState& state, const std::vector<double>& loss);

struct MwuRound {
    std::vector<double> p;
    std::vector<double> loss;
    double window_lo = 0.0;
    double window_hi = 0.0;
};

struct RegretAudit {
    double realized = 0.0;
    double bound = 0.0;
    // (round, expert) pairs whose loss fell outside the declared window.
    std::vector<std::pair<int, int>> width_violations;
    bool within_bound() const { return realized <= bound; }
};

// realized = sum_t <p_t, l_t> - min_i sum_t l_t(i);
// bound = 2 * sqrt(ln(n) * T) * B with B the declared width. Width
// violations are reported, not treated as errors: the windows are an audit.
RegretAudit mwu_regret_audit(const std::vector<MwuRound>& history, double width);

} // namespace mdl
