#include "mdl/report.hpp"

#include <sstream>

#include "mdl/subsets.hpp"

namespace mdl {

using nlohmann::json;

json report_to_json(const RunReport& report) {
    json j;
    j["config"] = report.config_echo;

    json comps = json::array();
    for (const MixtureComponent& c : report.classifier.components()) {
        comps.push_back({{"weight", c.weight}, {"hypothesis", c.hypothesis}});
    }
    j["classifier"] = {{"components", std::move(comps)}};

    j["per_distribution_losses"] = report.per_distribution_losses;
    j["max_output_loss"] = report.max_output_loss;
    if (report.truth) {
        j["opt"] = report.truth->opt;
        j["opt_hypothesis"] = report.truth->argmin;
    }
    j["vc_dim"] = report.vc_dim;

    json phases;
    for (int ph = 0; ph < kNumPhases; ++ph) {
        phases[phase_name(static_cast<Phase>(ph))] = report.budget.per_phase()[ph];
    }
    j["budget"] = {{"total", report.budget.total()},
                   {"per_distribution", report.budget.per_distribution()},
                   {"per_phase", std::move(phases)}};

    if (!report.rounds.empty()) {
        json rounds = json::array();
        for (const RoundTelemetry& r : report.rounds) {
            json removed = json::array();
            for (const RemovalWitness& w : r.removed) {
                removed.push_back({{"representative", w.representative},
                                   {"subset", subset_indices(w.subset_mask)},
                                   {"ratio", w.ratio}});
            }
            rounds.push_back({{"p", r.p},
                              {"loss", r.loss},
                              {"window", {r.window_lo, r.window_hi}},
                              {"cover_size", r.cover_size},
                              {"survivors", r.survivor_count},
                              {"width_ok", r.width_ok},
                              {"removed", std::move(removed)}});
        }
        j["rounds"] = std::move(rounds);
    }
    if (report.has_regret) {
        j["regret"] = {{"realized", report.regret_realized},
                       {"bound", report.regret_bound},
                       {"width", report.window_width}};
    }
    if (!report.candidates.empty()) {
        json cands = json::array();
        for (const CandidateOutcome& c : report.candidates) {
            json jc;
            if (c.opt_estimate) {
                jc["opt_estimate"] = *c.opt_estimate;
            } else {
                jc["opt_estimate"] = nullptr; // the pilot classifier
            }
            jc["aborted"] = c.aborted;
            if (!c.aborted) jc["empirical_max_loss"] = c.empirical_max_loss;
            cands.push_back(std::move(jc));
        }
        j["candidates"] = std::move(cands);
        j["selected_candidate"] = report.selected_candidate;
    }
    if (!report.schedule.empty()) {
        json levels = json::array();
        for (const LevelPlan& plan : report.schedule) {
            levels.push_back({{"level", plan.level},
                              {"eps", plan.eps},
                              {"delta", plan.delta},
                              {"oracle_error", plan.oracle_error},
                              {"rounds", plan.rounds}});
        }
        j["schedule"] = std::move(levels);
    }
    j["wall_clock_ms"] = report.wall_clock_ms;
    return j;
}

std::string rounds_to_csv(const std::vector<RoundTelemetry>& rounds) {
    std::ostringstream out;
    out << "round,cover_size,survivors,width_ok,window_lo,window_hi";
    if (!rounds.empty()) {
        for (std::size_t i = 0; i < rounds[0].p.size(); ++i) out << ",p" << i;
        for (std::size_t i = 0; i < rounds[0].loss.size(); ++i) out << ",loss" << i;
    }
    out << "\n";
    out.precision(17);
    for (std::size_t t = 0; t < rounds.size(); ++t) {
        const RoundTelemetry& r = rounds[t];
        out << t << "," << r.cover_size << "," << r.survivor_count << ","
            << (r.width_ok ? 1 : 0) << "," << r.window_lo << "," << r.window_hi;
        for (double v : r.p) out << "," << v;
        for (double v : r.loss) out << "," << v;
        out << "\n";
    }
    return out.str();
}

} // namespace mdl
