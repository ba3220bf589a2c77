#include "mdl/mwu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mdl {

MwuState mwu_init(int n, int horizon, double width) {
    if (n < 1) throw std::invalid_argument("expert count must be >= 1");
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    if (!(width > 0.0)) throw std::invalid_argument("width must be > 0");
    MwuState s;
    s.n = n;
    s.horizon = horizon;
    s.eta = std::sqrt(std::log(static_cast<double>(n)) / horizon) / width;
    s.cumulative.assign(static_cast<std::size_t>(n), 0.0);
    s.t = 0;
    return s;
}

MixtureStrategy mwu_strategy(const MwuState& state) {
    MixtureStrategy out;
    out.p.resize(state.cumulative.size());
    const double lo =
        *std::min_element(state.cumulative.begin(), state.cumulative.end());
    double total = 0.0;
    for (std::size_t i = 0; i < state.cumulative.size(); ++i) {
        out.p[i] = std::exp(-state.eta * (state.cumulative[i] - lo));
        total += out.p[i];
    }
    for (double& v : out.p) v /= total;
    return out;
}

void mwu_update(MwuState& state, const std::vector<double>& loss) {
    if (loss.size() != state.cumulative.size()) {
        throw std::invalid_argument("loss vector length mismatch");
    }
    if (state.t >= state.horizon) {
        throw std::logic_error("mwu horizon exceeded");
    }
    for (std::size_t i = 0; i < loss.size(); ++i) state.cumulative[i] += loss[i];
    ++state.t;
}

RegretAudit mwu_regret_audit(const std::vector<MwuRound>& history, double width) {
    RegretAudit audit;
    if (history.empty()) return audit;
    const std::size_t n = history[0].p.size();
    std::vector<double> expert_totals(n, 0.0);
    double algo_total = 0.0;
    for (std::size_t t = 0; t < history.size(); ++t) {
        const MwuRound& round = history[t];
        if (round.p.size() != n || round.loss.size() != n) {
            throw std::invalid_argument("inconsistent history");
        }
        for (std::size_t i = 0; i < n; ++i) {
            algo_total += round.p[i] * round.loss[i];
            expert_totals[i] += round.loss[i];
            if (round.loss[i] < round.window_lo - 1e-12 ||
                round.loss[i] > round.window_hi + 1e-12) {
                audit.width_violations.emplace_back(static_cast<int>(t),
                                                    static_cast<int>(i));
            }
        }
    }
    audit.realized =
        algo_total - *std::min_element(expert_totals.begin(), expert_totals.end());
    audit.bound = 2.0 *
                  std::sqrt(std::log(static_cast<double>(n)) *
                            static_cast<double>(history.size())) *
                  width;
    return audit;
}

} // namespace mdl
