#pragma once
#include <optional>
#include <string>

#include "mdl/instance_io.hpp"
#include "mdl/report.hpp"

namespace mdl {

enum class Pipeline { Boost, Recursive, OptFree };

// Parsed and validated run configuration.
//
// JSON schema (README documents the full contract):
//   {"instance": path or inline object, "pipeline": "boost"|"recursive"|
//    "opt_free", "mode": "sampled"|"population", "eps": float,
//    "delta": float, "opt_estimate": float (not for opt_free),
//    "depth": int, "search_depth": int (opt_free), "seed": int,
//    "constants": {"c1","c2","c3","cT"}, "vc_dim": int (optional override),
//    "compute_oracle": bool}
struct RunConfig {
    Pipeline pipeline = Pipeline::Boost;
    EvalMode mode = EvalMode::Sampled;
    double eps = 0.1;
    double delta = 0.1;
    std::optional<double> opt_estimate;
    int depth = 1;
    int search_depth = 1;
    uint64_t seed = 0;
    Constants constants;
    std::optional<int> vc_dim_override;
    bool compute_oracle = true;
    std::string instance_path;               // empty when inline
    std::optional<nlohmann::json> instance_inline;
    nlohmann::json echo;                     // the validated document
};

// Throws SchemaError naming the offending field path.
RunConfig parse_run_config(const nlohmann::json& j);

Instance load_config_instance(const RunConfig& config);

// Executes the configured pipeline. Throws EmptySurvivorsError (or
// std::runtime_error for an all-aborted grid) on runtime aborts.
RunReport execute_run(const RunConfig& config, const Instance& inst);

struct VerifyCheck {
    std::string name;
    bool pass = true;
    std::string detail;
};

// Recomputes the report's exact losses, budget conservation, regret audit
// and width flags against the instance. Tampering fails a check.
std::vector<VerifyCheck> verify_report(const nlohmann::json& report,
                                       const Instance& inst);

} // namespace mdl
