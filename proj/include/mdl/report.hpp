#pragma once
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mdl/boost.hpp"
#include "mdl/meta.hpp"
#include "mdl/oracle.hpp"

namespace mdl {

// Everything a finished run reports. Self-contained: the echoed config plus
// the seed reproduce the run.
struct RunReport {
    nlohmann::json config_echo;
    MixtureClassifier classifier;
    std::vector<double> per_distribution_losses;
    double max_output_loss = 0.0;
    std::optional<GroundTruth> truth;
    int vc_dim = 0;
    BudgetLedger budget;
    std::vector<RoundTelemetry> rounds; // top-level loop only
    double regret_realized = 0.0;
    double regret_bound = 0.0;
    double window_width = 0.0;
    bool has_regret = false;
    std::vector<CandidateOutcome> candidates; // opt-free pipeline only
    int selected_candidate = -1;
    std::vector<LevelPlan> schedule; // recursive pipeline only
    double wall_clock_ms = 0.0;
};

nlohmann::json report_to_json(const RunReport& report);

// Per-round telemetry as CSV (one row per round) for plotting.
std::string rounds_to_csv(const std::vector<RoundTelemetry>& rounds);

} // namespace mdl
