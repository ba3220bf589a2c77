#include "mdl/runner.hpp"

#include <chrono>
#include <cmath>
#include <set>

namespace mdl {

using nlohmann::json;

namespace {

double require_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path, "expected a number");
    return j.get<double>();
}

int require_pos_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
    const int v = j.get<int>();
    if (v < 1) throw SchemaError(path, "must be >= 1");
    return v;
}

const std::set<std::string> kKnownKeys = {
    "instance", "pipeline", "mode", "eps", "delta", "opt_estimate",
    "depth", "search_depth", "seed", "constants", "vc_dim", "compute_oracle"};

} // namespace

RunConfig parse_run_config(const json& j) {
    if (!j.is_object()) throw SchemaError("", "config must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!kKnownKeys.count(it.key())) {
            throw SchemaError(it.key(), "unknown field");
        }
    }
    RunConfig config;

    auto inst = j.find("instance");
    if (inst == j.end()) throw SchemaError("instance", "missing required field");
    if (inst->is_string()) {
        config.instance_path = inst->get<std::string>();
    } else if (inst->is_object()) {
        config.instance_inline = *inst;
    } else {
        throw SchemaError("instance", "expected a path string or inline object");
    }

    auto pl = j.find("pipeline");
    if (pl == j.end()) throw SchemaError("pipeline", "missing required field");
    if (!pl->is_string()) throw SchemaError("pipeline", "expected a string");
    const std::string pipeline = pl->get<std::string>();
    if (pipeline == "boost") {
        config.pipeline = Pipeline::Boost;
    } else if (pipeline == "recursive") {
        config.pipeline = Pipeline::Recursive;
    } else if (pipeline == "opt_free") {
        config.pipeline = Pipeline::OptFree;
    } else {
        throw SchemaError("pipeline", "unknown pipeline '" + pipeline + "'");
    }

    if (auto it = j.find("mode"); it != j.end()) {
        if (!it->is_string()) throw SchemaError("mode", "expected a string");
        const std::string mode = it->get<std::string>();
        if (mode == "sampled") {
            config.mode = EvalMode::Sampled;
        } else if (mode == "population") {
            config.mode = EvalMode::Population;
        } else {
            throw SchemaError("mode", "unknown mode '" + mode + "'");
        }
    }

    auto eps = j.find("eps");
    if (eps == j.end()) throw SchemaError("eps", "missing required field");
    config.eps = require_number(*eps, "eps");
    if (!(config.eps > 0.0 && config.eps <= 1.0)) {
        throw SchemaError("eps", "must be in (0, 1]");
    }

    auto delta = j.find("delta");
    if (delta == j.end()) throw SchemaError("delta", "missing required field");
    config.delta = require_number(*delta, "delta");
    if (!(config.delta > 0.0 && config.delta < 1.0)) {
        throw SchemaError("delta", "must be in (0, 1)");
    }

    if (auto it = j.find("opt_estimate"); it != j.end()) {
        const double v = require_number(*it, "opt_estimate");
        if (!(v >= 0.0 && v <= 1.0)) {
            throw SchemaError("opt_estimate", "must be in [0, 1]");
        }
        config.opt_estimate = v;
    }
    if (config.pipeline != Pipeline::OptFree && !config.opt_estimate) {
        throw SchemaError("opt_estimate",
                          "required for the boost and recursive pipelines");
    }

    if (auto it = j.find("depth"); it != j.end()) {
        config.depth = require_pos_int(*it, "depth");
    }
    if (config.pipeline == Pipeline::Boost && config.depth != 1) {
        throw SchemaError("depth", "the boost pipeline is depth 1");
    }
    if (auto it = j.find("search_depth"); it != j.end()) {
        config.search_depth = require_pos_int(*it, "search_depth");
    }
    if (auto it = j.find("seed"); it != j.end()) {
        if (!it->is_number_integer()) throw SchemaError("seed", "expected an integer");
        config.seed = it->get<uint64_t>();
    }
    if (auto it = j.find("constants"); it != j.end()) {
        if (!it->is_object()) throw SchemaError("constants", "expected an object");
        for (auto c = it->begin(); c != it->end(); ++c) {
            const std::string path = "constants." + c.key();
            const double v = require_number(c.value(), path);
            if (!(v > 0.0)) throw SchemaError(path, "must be > 0");
            if (c.key() == "c1") {
                config.constants.c1 = v;
            } else if (c.key() == "c2") {
                config.constants.c2 = v;
            } else if (c.key() == "c3") {
                config.constants.c3 = v;
            } else if (c.key() == "cT") {
                config.constants.cT = v;
            } else {
                throw SchemaError(path, "unknown constant");
            }
        }
    }
    if (auto it = j.find("vc_dim"); it != j.end() && !it->is_null()) {
        if (!it->is_number_integer()) throw SchemaError("vc_dim", "expected an integer");
        const int v = it->get<int>();
        if (v < 0) throw SchemaError("vc_dim", "must be >= 0");
        config.vc_dim_override = v;
    }
    if (auto it = j.find("compute_oracle"); it != j.end()) {
        if (!it->is_boolean()) throw SchemaError("compute_oracle", "expected a boolean");
        config.compute_oracle = it->get<bool>();
    }

    config.echo = j;
    return config;
}

Instance load_config_instance(const RunConfig& config) {
    if (config.instance_inline) {
        try {
            return instance_from_json(*config.instance_inline);
        } catch (const SchemaError& e) {
            throw SchemaError("instance." + e.path, e.what());
        }
    }
    return load_instance(config.instance_path);
}

RunReport execute_run(const RunConfig& config, const Instance& inst) {
    const auto start = std::chrono::steady_clock::now();
    RunReport report;
    report.config_echo = config.echo;

    const int d = config.vc_dim_override ? *config.vc_dim_override
                                         : vc_dimension(inst);
    report.vc_dim = d;

    RngStream rng(config.seed, 0);
    BudgetLedger ledger;

    if (config.pipeline == Pipeline::OptFree) {
        OptFreeConfig ofc;
        ofc.eps = config.eps;
        ofc.delta = config.delta;
        ofc.search_depth = config.search_depth;
        ofc.constants = config.constants;
        ofc.vc_dim = d;
        const WrappedLearner learner =
            wrap_recursive_learner(config.depth, config.mode, config.constants, d);
        OptFreeResult result = opt_free_learn(inst, ofc, learner, rng, ledger);
        report.classifier = result.classifier;
        report.candidates = std::move(result.candidates);
        report.selected_candidate = result.selected;
    } else {
        LearnerConfig lc;
        lc.eps = config.eps;
        lc.delta = config.delta;
        lc.opt_estimate = *config.opt_estimate;
        lc.mode = config.mode;
        lc.constants = config.constants;
        lc.vc_dim = d;
        lc.depth = config.depth;
        BoostResult result =
            recursive_learn(inst, all_hypotheses(inst), lc, rng, ledger);
        report.classifier = result.classifier;
        report.rounds = std::move(result.rounds);
        report.regret_realized = result.regret_realized;
        report.regret_bound = result.regret_bound;
        report.window_width = result.window_width;
        report.has_regret = true;
        if (config.pipeline == Pipeline::Recursive) {
            report.schedule = recursion_schedule(inst.k(), config.eps,
                                                 config.delta, config.depth,
                                                 config.constants)
                                  .levels;
        }
    }

    report.per_distribution_losses.resize(inst.k());
    report.max_output_loss = 0.0;
    for (int i = 0; i < inst.k(); ++i) {
        report.per_distribution_losses[i] =
            population_loss(inst, i, report.classifier);
        report.max_output_loss =
            std::max(report.max_output_loss, report.per_distribution_losses[i]);
    }
    if (config.compute_oracle) {
        GroundTruth truth = brute_force_opt(inst);
        truth.vc_dimension = d;
        report.truth = truth;
    }
    report.budget = ledger;
    if (!ledger.conserved()) {
        throw std::logic_error("budget ledger failed conservation");
    }

    const auto end = std::chrono::steady_clock::now();
    report.wall_clock_ms =
        std::chrono::duration<double, std::milli>(end - start).count();
    return report;
}

namespace {

void add_check(std::vector<VerifyCheck>& checks, const std::string& name,
               bool pass, const std::string& detail) {
    checks.push_back({name, pass, detail});
}

} // namespace

std::vector<VerifyCheck> verify_report(const json& report, const Instance& inst) {
    std::vector<VerifyCheck> checks;
    constexpr double kTol = 1e-9;

    MixtureClassifier classifier;
    bool classifier_ok = true;
    try {
        std::vector<MixtureComponent> comps;
        for (const json& c : report.at("classifier").at("components")) {
            comps.push_back({c.at("weight").get<double>(),
                             c.at("hypothesis").get<int>()});
        }
        classifier = MixtureClassifier(std::move(comps));
        for (const MixtureComponent& c : classifier.components()) {
            if (c.hypothesis >= inst.num_hypotheses()) {
                throw std::out_of_range("hypothesis index out of range");
            }
        }
    } catch (const std::exception& e) {
        classifier_ok = false;
        add_check(checks, "classifier", false, e.what());
    }
    if (!classifier_ok) return checks;
    add_check(checks, "classifier", true, "valid mixture");

    // Exact losses.
    bool losses_ok = true;
    std::string loss_detail = "matches exact recomputation";
    const auto& reported = report.at("per_distribution_losses");
    if (static_cast<int>(reported.size()) != inst.k()) {
        losses_ok = false;
        loss_detail = "length mismatch";
    } else {
        double max_loss = 0.0;
        for (int i = 0; i < inst.k(); ++i) {
            const double exact = population_loss(inst, i, classifier);
            const double claimed = reported[i].get<double>();
            max_loss = std::max(max_loss, exact);
            if (std::abs(exact - claimed) > kTol || claimed < 0.0 || claimed > 1.0) {
                losses_ok = false;
                loss_detail = "distribution " + std::to_string(i) + ": reported " +
                              std::to_string(claimed) + ", exact " +
                              std::to_string(exact);
                break;
            }
        }
        if (losses_ok &&
            std::abs(report.at("max_output_loss").get<double>() - max_loss) > kTol) {
            losses_ok = false;
            loss_detail = "max_output_loss mismatch";
        }
    }
    add_check(checks, "exact_losses", losses_ok, loss_detail);

    if (report.contains("opt")) {
        const GroundTruth truth = brute_force_opt(inst);
        const double claimed = report.at("opt").get<double>();
        add_check(checks, "opt", std::abs(truth.opt - claimed) <= kTol,
                  "reported " + std::to_string(claimed) + ", exact " +
                      std::to_string(truth.opt));
    }

    // Budget conservation.
    {
        const json& budget = report.at("budget");
        uint64_t by_dist = 0, by_phase = 0;
        for (const json& v : budget.at("per_distribution")) {
            by_dist += v.get<uint64_t>();
        }
        for (auto it = budget.at("per_phase").begin();
             it != budget.at("per_phase").end(); ++it) {
            by_phase += it->get<uint64_t>();
        }
        const uint64_t total = budget.at("total").get<uint64_t>();
        add_check(checks, "budget_conservation",
                  by_dist == total && by_phase == total,
                  "total " + std::to_string(total));
    }

    if (report.contains("rounds")) {
        const json& rounds = report.at("rounds");
        bool width_flags_ok = true;
        std::vector<MwuRound> history;
        std::vector<int> flagged;
        for (std::size_t t = 0; t < rounds.size(); ++t) {
            const json& r = rounds[t];
            MwuRound round;
            round.p = r.at("p").get<std::vector<double>>();
            const std::vector<double> loss =
                r.at("loss").get<std::vector<double>>();
            const double lo = r.at("window")[0].get<double>();
            const double hi = r.at("window")[1].get<double>();
            bool ok = true;
            for (double v : loss) {
                if (v < lo - 1e-12 || v > hi + 1e-12) ok = false;
            }
            if (!ok) flagged.push_back(static_cast<int>(t));
            if (ok != r.at("width_ok").get<bool>()) width_flags_ok = false;
            round.loss.resize(loss.size());
            for (std::size_t i = 0; i < loss.size(); ++i) round.loss[i] = -loss[i];
            round.window_lo = -hi;
            round.window_hi = -lo;
            history.push_back(std::move(round));
        }
        std::string flag_detail = "flags consistent";
        if (!flagged.empty()) {
            flag_detail = "rounds outside window:";
            for (int t : flagged) flag_detail += " " + std::to_string(t);
        }
        add_check(checks, "width_audit", width_flags_ok, flag_detail);

        if (report.contains("regret")) {
            const json& regret = report.at("regret");
            const double width = regret.at("width").get<double>();
            const RegretAudit audit = mwu_regret_audit(history, width);
            const bool realized_ok =
                std::abs(audit.realized - regret.at("realized").get<double>()) <=
                kTol;
            const bool bound_ok =
                std::abs(audit.bound - regret.at("bound").get<double>()) <= kTol;
            add_check(checks, "regret_audit",
                      realized_ok && bound_ok && audit.within_bound(),
                      "realized " + std::to_string(audit.realized) + ", bound " +
                          std::to_string(audit.bound));
        }
    }
    return checks;
}

} // namespace mdl
