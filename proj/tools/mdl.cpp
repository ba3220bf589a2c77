// Command-line front end: run configured pipelines, print exact ground
// truth, re-verify reports, and generate seeded desk-scale instances.
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "mdl/gen.hpp"
#include "mdl/instance_io.hpp"
#include "mdl/oracle.hpp"
#include "mdl/runner.hpp"

using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntimeAbort = 3;

json error_json(const std::string& message, const std::string& path = "") {
    json j;
    j["error"] = message;
    if (!path.empty()) j["path"] = path;
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << text;
}

int cmd_run(const std::string& config_path, const std::string& out_path,
            std::optional<uint64_t> seed_override,
            std::optional<std::string> mode_override,
            const std::string& csv_path, bool quiet) {
    json config_json;
    {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << error_json("cannot open config: " + config_path).dump()
                      << "\n";
            return kExitValidation;
        }
        try {
            in >> config_json;
        } catch (const json::parse_error& e) {
            std::cerr << error_json(std::string("JSON parse error: ") + e.what())
                             .dump()
                      << "\n";
            return kExitValidation;
        }
    }
    if (seed_override) config_json["seed"] = *seed_override;
    if (mode_override) config_json["mode"] = *mode_override;

    mdl::RunConfig config;
    try {
        config = mdl::parse_run_config(config_json);
    } catch (const mdl::SchemaError& e) {
        std::cerr << error_json(e.what(), e.path).dump() << "\n";
        return kExitValidation;
    }

    try {
        const mdl::Instance inst = mdl::load_config_instance(config);
        const mdl::RunReport report = mdl::execute_run(config, inst);
        const json j = mdl::report_to_json(report);
        write_text(out_path, j.dump(2) + "\n");
        if (!csv_path.empty()) {
            write_text(csv_path, mdl::rounds_to_csv(report.rounds));
        }
        if (!quiet) {
            std::cerr << "max_output_loss " << report.max_output_loss;
            if (report.truth) std::cerr << " (opt " << report.truth->opt << ")";
            std::cerr << ", samples " << report.budget.total() << "\n";
        }
        return 0;
    } catch (const mdl::SchemaError& e) {
        std::cerr << error_json(e.what(), e.path).dump() << "\n";
        return kExitValidation;
    } catch (const mdl::EmptySurvivorsError& e) {
        std::cerr << error_json(e.what()).dump() << "\n";
        return kExitRuntimeAbort;
    } catch (const std::exception& e) {
        std::cerr << error_json(e.what()).dump() << "\n";
        return kExitRuntimeAbort;
    }
}

int cmd_oracle(const std::string& instance_path) {
    try {
        const mdl::Instance inst = mdl::load_instance(instance_path);
        const mdl::GroundTruth truth = mdl::ground_truth(inst);
        json j;
        j["opt"] = truth.opt;
        j["opt_hypothesis"] = truth.argmin;
        j["vc_dim"] = truth.vc_dimension;
        j["per_hypothesis_max_loss"] = truth.per_hypothesis_max_loss;
        std::cout << j.dump(2) << "\n";
        return 0;
    } catch (const mdl::SchemaError& e) {
        std::cerr << error_json(e.what(), e.path).dump() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << error_json(e.what()).dump() << "\n";
        return kExitValidation;
    }
}

int cmd_verify(const std::string& report_path, const std::string& instance_path) {
    try {
        json report;
        std::ifstream in(report_path);
        if (!in) throw std::runtime_error("cannot open report: " + report_path);
        in >> report;
        const mdl::Instance inst = mdl::load_instance(instance_path);
        const auto checks = mdl::verify_report(report, inst);
        bool all_pass = true;
        for (const mdl::VerifyCheck& c : checks) {
            std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail
                      << "\n";
            all_pass = all_pass && c.pass;
        }
        return all_pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << error_json(e.what()).dump() << "\n";
        return kExitValidation;
    }
}

int cmd_gen(const mdl::GenSpec& spec, const std::string& out_path) {
    try {
        const mdl::Instance inst = mdl::generate_instance(spec);
        write_text(out_path, mdl::instance_to_json(inst).dump(2) + "\n");
        return 0;
    } catch (const std::exception& e) {
        std::cerr << error_json(e.what()).dump() << "\n";
        return kExitValidation;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimax learning over multiple discrete distributions"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "execute a configured pipeline");
    std::string config_path, out_path = "-", csv_path;
    std::optional<uint64_t> seed_override;
    std::optional<std::string> mode_override;
    bool quiet = false;
    run->add_option("--config", config_path, "config JSON path")->required();
    run->add_option("--out", out_path, "report output path ('-' = stdout)");
    run->add_option("--seed", seed_override, "override the config seed");
    run->add_option("--mode", mode_override, "override the config mode")
        ->check(CLI::IsMember({"sampled", "population"}));
    run->add_option("--csv", csv_path, "write per-round telemetry CSV");
    run->add_flag("--quiet", quiet, "suppress the summary line");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "print exact ground truth");
    std::string oracle_instance;
    oracle->add_option("instance", oracle_instance, "instance JSON path")
        ->required();

    // verify
    auto* verify = app.add_subcommand("verify", "re-check a report");
    std::string verify_report_path, verify_instance;
    verify->add_option("report", verify_report_path, "report JSON path")
        ->required();
    verify->add_option("instance", verify_instance, "instance JSON path")
        ->required();

    // gen
    auto* gen = app.add_subcommand("gen", "generate a seeded instance");
    mdl::GenSpec spec;
    std::string gen_out = "-";
    double noise = 0.15;
    bool no_plant = false;
    gen->add_option("--seed", spec.seed, "generator seed");
    gen->add_option("--domain-size", spec.domain_size, "number of domain points");
    gen->add_option("--hypotheses", spec.num_hypotheses, "number of hypotheses");
    gen->add_option("--k", spec.k, "number of distributions");
    gen->add_option("--atoms", spec.atoms_per_distribution,
                    "atoms per distribution");
    gen->add_option("--noise", noise, "label noise around the planted hypothesis");
    gen->add_flag("--no-plant", no_plant, "label uniformly at random instead");
    gen->add_option("--out", gen_out, "output path ('-' = stdout)");

    CLI11_PARSE(app, argc, argv);

    if (*run) {
        return cmd_run(config_path, out_path, seed_override, mode_override,
                       csv_path, quiet);
    }
    if (*oracle) return cmd_oracle(oracle_instance);
    if (*verify) return cmd_verify(verify_report_path, verify_instance);
    if (*gen) {
        spec.planted_noise =
            no_plant ? std::nullopt : std::optional<double>(noise);
        return cmd_gen(spec, gen_out);
    }
    return 0;
}
