#include "mdl/boost.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mdl {

void LearnerConfig::validate() const {
    if (!(eps > 0.0 && eps <= 1.0)) {
        throw std::invalid_argument("eps must be in (0, 1]");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("delta must be in (0, 1)");
    }
    if (!(opt_estimate >= 0.0 && opt_estimate <= 1.0)) {
        throw std::invalid_argument("opt_estimate must be in [0, 1]");
    }
    if (!(oracle_error >= eps && oracle_error <= 1.0)) {
        throw std::invalid_argument("oracle_error must be in [eps, 1]");
    }
    if (oracle_error < 1.0 && eps > oracle_error / 32.0) {
        throw std::invalid_argument(
            "a nontrivial oracle requires eps <= oracle_error / 32");
    }
    if (constants.c1 <= 0.0 || constants.c2 <= 0.0 || constants.c3 <= 0.0 ||
        constants.cT <= 0.0) {
        throw std::invalid_argument("constants must be positive");
    }
    if (vc_dim < 0) throw std::invalid_argument("vc_dim must be >= 0");
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
}

double log_term(int k, int d, double eps, double delta) {
    const double arg = static_cast<double>(k) * std::max(d, 1) / (eps * delta);
    return std::log(std::max(arg, std::exp(1.0)));
}

namespace {

int at_least_one(double v) {
    return std::max(1, static_cast<int>(std::ceil(v)));
}

} // namespace

int cover_sample_size(int k, int d, double eps, double delta, double c1) {
    return at_least_one(c1 * std::max(d, 1) * log_term(k, d, eps, delta) / eps);
}

int filter_sample_size(int k, int d, double eps, double delta, double c2) {
    return at_least_one(c2 * (k + d) * log_term(k, d, eps, delta) / (eps * eps));
}

int estimate_sample_size(int k, int d, double eps, double delta, double c3) {
    return at_least_one(c3 * log_term(k, d, eps, delta) / (eps * eps));
}

int round_count(int k, double oracle_error, double eps, double cT) {
    const double ratio = oracle_error / eps;
    return at_least_one(cT * std::log(static_cast<double>(k)) * ratio * ratio);
}

MixtureClassifier base_oracle(const Instance&, const std::vector<int>& surviving,
                              double, RngStream&, BudgetLedger&) {
    if (surviving.empty()) {
        throw std::invalid_argument("base oracle needs a nonempty survivor set");
    }
    return MixtureClassifier::point_mass(
        *std::min_element(surviving.begin(), surviving.end()));
}

LossVector estimate_losses(const Instance& inst, const MixtureClassifier& f,
                           double opt_estimate, double oracle_error, int m3,
                           RngStream& rng, BudgetLedger& ledger, EvalMode mode) {
    const double floor = opt_estimate - oracle_error;
    LossVector out;
    out.values.resize(inst.k());
    if (mode == EvalMode::Population) {
        for (int i = 0; i < inst.k(); ++i) {
            out.values[i] = std::max(population_loss(inst, i, f), floor);
        }
        return out;
    }
    if (m3 < 1) throw std::invalid_argument("m3 must be >= 1");
    const std::vector<double> q = predict_one_probabilities(inst, f);
    for (int i = 0; i < inst.k(); ++i) {
        const std::vector<TaggedSample> s =
            draw_from(inst.distribution(i), m3, rng, ledger, Phase::Estimate, i);
        out.values[i] = std::max(empirical_loss_from_probabilities(s, q), floor);
    }
    return out;
}

EmptySurvivorsError::EmptySurvivorsError(int round_, double opt_estimate_,
                                         std::size_t cover_size_)
    : std::runtime_error([&] {
          std::ostringstream msg;
          msg << "filter removed every hypothesis in round " << round_
              << " (opt_estimate " << opt_estimate_ << ", cover size "
              << cover_size_
              << "); opt_estimate likely undershoots the minimax loss";
          return msg.str();
      }()),
      round(round_),
      opt_estimate(opt_estimate_) {}

std::vector<int> all_hypotheses(const Instance& inst) {
    std::vector<int> out(static_cast<std::size_t>(inst.num_hypotheses()));
    for (int h = 0; h < inst.num_hypotheses(); ++h) out[h] = h;
    return out;
}

BoostResult boost_learn(const Instance& inst, const std::vector<int>& hyp_subset,
                        const LearnerConfig& config,
                        const MultiLearnerOracle& oracle, RngStream& rng,
                        BudgetLedger& ledger) {
    config.validate();
    if (hyp_subset.empty()) {
        throw std::invalid_argument("empty hypothesis subset");
    }
    const int k = inst.k();
    const int d = config.vc_dim;
    const double eps = config.eps;
    const double alpha = config.oracle_error;
    const int T = round_count(k, alpha, eps, config.constants.cT);
    const int m1 = cover_sample_size(k, d, eps, config.delta, config.constants.c1);
    const int m2 = filter_sample_size(k, d, eps, config.delta, config.constants.c2);
    const int m3 = estimate_sample_size(k, d, eps, config.delta, config.constants.c3);
    const double window_lo = config.opt_estimate - 2.0 * alpha - eps;
    const double window_hi = config.opt_estimate + 2.0 * alpha + eps;
    const double width = 4.0 * alpha + 2.0 * eps;

    MwuState mwu = mwu_init(k, T, width);
    BoostResult result;
    result.window_width = width;
    result.round_count = T;
    result.rounds.reserve(T);
    std::map<int, double> averaged; // hypothesis -> accumulated weight
    std::vector<MwuRound> history;
    history.reserve(T);

    for (int t = 0; t < T; ++t) {
        const MixtureStrategy p = mwu_strategy(mwu);
        const Cover cover =
            config.mode == EvalMode::Population
                ? construct_cover_population(inst, hyp_subset)
                : construct_cover(inst, hyp_subset, p, m1, rng, ledger);
        const uint64_t projection_bound = sauer_shelah_bound(
            static_cast<int>(cover.sample_set.size()), std::max(d, 0));
        if (cover.size() > projection_bound) {
            throw std::logic_error("projection count exceeds the Sauer-Shelah bound");
        }

        SurvivorSet survivors =
            filter_hypotheses(inst, hyp_subset, cover, p, config.opt_estimate,
                              eps, m2, rng, ledger, config.mode);
        if (survivors.empty()) {
            throw EmptySurvivorsError(t, config.opt_estimate, cover.size());
        }

        MixtureClassifier f_t = [&] {
            BudgetLedger::PhaseOverride guard(ledger, Phase::OracleRecursion);
            return oracle(inst, survivors.surviving, config.opt_estimate, rng,
                          ledger);
        }();
        for (const MixtureComponent& c : f_t.components()) {
            if (!std::binary_search(survivors.surviving.begin(),
                                    survivors.surviving.end(), c.hypothesis)) {
                throw std::logic_error(
                    "oracle output is not supported on the surviving subset");
            }
        }

        const LossVector loss = estimate_losses(inst, f_t, config.opt_estimate,
                                                alpha, m3, rng, ledger,
                                                config.mode);

        RoundTelemetry round;
        round.p = p.p;
        round.loss = loss.values;
        round.window_lo = window_lo;
        round.window_hi = window_hi;
        round.cover_size = static_cast<int>(cover.size());
        round.survivor_count = static_cast<int>(survivors.surviving.size());
        round.removed = std::move(survivors.removed_witnesses);
        for (double v : loss.values) {
            if (v < window_lo - 1e-12 || v > window_hi + 1e-12) {
                round.width_ok = false;
            }
        }
        result.rounds.push_back(std::move(round));

        for (const MixtureComponent& c : f_t.components()) {
            averaged[c.hypothesis] += c.weight / T;
        }

        std::vector<double> negated(loss.values.size());
        for (std::size_t i = 0; i < loss.values.size(); ++i) {
            negated[i] = -loss.values[i];
        }
        mwu_update(mwu, negated);
        history.push_back({p.p, negated, -window_hi, -window_lo});
    }

    std::vector<MixtureComponent> components;
    components.reserve(averaged.size());
    for (const auto& [h, w] : averaged) components.push_back({w, h});
    result.classifier = MixtureClassifier(std::move(components));

    const RegretAudit audit = mwu_regret_audit(history, width);
    result.regret_realized = audit.realized;
    result.regret_bound = audit.bound;
    return result;
}

} // namespace mdl
