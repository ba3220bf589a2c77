#include <doctest.h>

#include "mdl/gen.hpp"
#include "mdl/runner.hpp"

using namespace mdl;
using nlohmann::json;

namespace {

json desk_config(const char* pipeline = "boost") {
    GenSpec spec;
    spec.seed = 77;
    spec.domain_size = 12;
    spec.num_hypotheses = 40;
    spec.k = 3;
    spec.atoms_per_distribution = 8;
    Instance inst = generate_instance(spec);

    json cfg;
    cfg["instance"] = instance_to_json(inst);
    cfg["pipeline"] = pipeline;
    cfg["mode"] = "sampled";
    cfg["eps"] = 0.1;
    cfg["delta"] = 0.1;
    cfg["opt_estimate"] = 0.35;
    cfg["seed"] = 4;
    return cfg;
}

json stripped(json report) {
    report.erase("wall_clock_ms");
    return report;
}

} // namespace

TEST_CASE("config parsing reports the offending path") {
    json cfg = desk_config();
    SUBCASE("valid") { CHECK_NOTHROW(parse_run_config(cfg)); }
    SUBCASE("missing eps") {
        cfg.erase("eps");
        try {
            parse_run_config(cfg);
            FAIL("expected SchemaError");
        } catch (const SchemaError& e) {
            CHECK(e.path == "eps");
        }
    }
    SUBCASE("eps out of range") {
        cfg["eps"] = 0.0;
        CHECK_THROWS_AS(parse_run_config(cfg), SchemaError);
        cfg["eps"] = 1.5;
        CHECK_THROWS_AS(parse_run_config(cfg), SchemaError);
    }
    SUBCASE("delta out of range") {
        cfg["delta"] = 1.0;
        CHECK_THROWS_AS(parse_run_config(cfg), SchemaError);
    }
    SUBCASE("unknown mode string") {
        cfg["mode"] = "exactish";
        CHECK_THROWS_AS(parse_run_config(cfg), SchemaError);
    }
    SUBCASE("unknown top-level field") {
        cfg["typo_field"] = 1;
        CHECK_THROWS_AS(parse_run_config(cfg), SchemaError);
    }
    SUBCASE("opt estimate required unless searching") {
        cfg.erase("opt_estimate");
        CHECK_THROWS_AS(parse_run_config(cfg), SchemaError);
        cfg["pipeline"] = "opt_free";
        CHECK_NOTHROW(parse_run_config(cfg));
    }
    SUBCASE("boost pipeline rejects depth") {
        cfg["depth"] = 2;
        CHECK_THROWS_AS(parse_run_config(cfg), SchemaError);
        cfg["pipeline"] = "recursive";
        CHECK_NOTHROW(parse_run_config(cfg));
    }
}

TEST_CASE("instance schema errors carry paths") {
    json j;
    j["domain_size"] = 2;
    j["hypotheses"] = json::array({json::array({0, 1}), json::array({0, 2})});
    j["distributions"] =
        json::array({json::array({json::object({{"x", 0}, {"y", 0}, {"p", 1.0}})})});
    try {
        instance_from_json(j);
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(e.path == "hypotheses[1][1]");
    }

    j["hypotheses"][1][1] = 1;
    j["distributions"][0][0]["p"] = 0.7; // sums to 0.7
    try {
        instance_from_json(j);
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(e.path == "distributions[0]");
    }
}

TEST_CASE("instance JSON round-trip") {
    GenSpec spec;
    spec.seed = 3;
    spec.domain_size = 9;
    spec.num_hypotheses = 10;
    spec.k = 2;
    spec.atoms_per_distribution = 5;
    Instance inst = generate_instance(spec);
    Instance back = instance_from_json(instance_to_json(inst));
    CHECK(back.domain_size() == inst.domain_size());
    CHECK(back.hypotheses() == inst.hypotheses());
    REQUIRE(back.k() == inst.k());
    for (int i = 0; i < inst.k(); ++i) {
        CHECK(back.distribution(i).atoms().size() ==
              inst.distribution(i).atoms().size());
    }
}

TEST_CASE("a run produces a self-consistent, verifiable report") {
    const json cfg_json = desk_config();
    RunConfig cfg = parse_run_config(cfg_json);
    Instance inst = load_config_instance(cfg);
    RunReport report = execute_run(cfg, inst);
    const json j = report_to_json(report);

    CHECK(j.contains("rounds"));
    CHECK(j.contains("regret"));
    CHECK(j.at("budget").at("total").get<uint64_t>() > 0);
    CHECK(j.at("max_output_loss").get<double>() <= 1.0);
    CHECK(j.contains("opt"));

    for (const VerifyCheck& check : verify_report(j, inst)) {
        INFO(check.name << ": " << check.detail);
        CHECK(check.pass);
    }
}

TEST_CASE("identical seeds yield byte-identical reports") {
    const json cfg_json = desk_config("recursive");
    RunConfig cfg = parse_run_config(cfg_json);
    Instance inst = load_config_instance(cfg);
    const std::string a = stripped(report_to_json(execute_run(cfg, inst))).dump();
    const std::string b = stripped(report_to_json(execute_run(cfg, inst))).dump();
    CHECK(a == b);

    // A different seed perturbs the sampled pipeline.
    json other = cfg_json;
    other["seed"] = 5;
    RunConfig cfg2 = parse_run_config(other);
    const std::string c =
        stripped(report_to_json(execute_run(cfg2, inst))).dump();
    CHECK(a != c);
}

TEST_CASE("tampered reports fail verification") {
    const json cfg_json = desk_config();
    RunConfig cfg = parse_run_config(cfg_json);
    Instance inst = load_config_instance(cfg);
    json report = report_to_json(execute_run(cfg, inst));

    SUBCASE("edited loss value") {
        report["per_distribution_losses"][0] =
            report["per_distribution_losses"][0].get<double>() + 0.05;
        bool exact_losses_pass = true;
        for (const VerifyCheck& check : verify_report(report, inst)) {
            if (check.name == "exact_losses") exact_losses_pass = check.pass;
        }
        CHECK_FALSE(exact_losses_pass);
    }
    SUBCASE("loss pushed outside the declared window flips the audit") {
        report["rounds"][0]["loss"][0] = 5.0;
        bool width_pass = true;
        bool regret_seen = true;
        for (const VerifyCheck& check : verify_report(report, inst)) {
            if (check.name == "width_audit") width_pass = check.pass;
            if (check.name == "regret_audit") regret_seen = check.pass;
        }
        (void)regret_seen;
        CHECK_FALSE(width_pass);
    }
    SUBCASE("edited budget breaks conservation") {
        report["budget"]["total"] = report["budget"]["total"].get<uint64_t>() + 1;
        bool budget_pass = true;
        for (const VerifyCheck& check : verify_report(report, inst)) {
            if (check.name == "budget_conservation") budget_pass = check.pass;
        }
        CHECK_FALSE(budget_pass);
    }
}

TEST_CASE("opt-free pipeline reports candidates and the selection") {
    json cfg_json = desk_config("opt_free");
    cfg_json.erase("opt_estimate");
    cfg_json["eps"] = 0.2;
    RunConfig cfg = parse_run_config(cfg_json);
    Instance inst = load_config_instance(cfg);
    RunReport report = execute_run(cfg, inst);
    const json j = report_to_json(report);
    REQUIRE(j.contains("candidates"));
    CHECK(j.at("candidates").size() == depth1_opt_grid(0.2).size());
    CHECK(j.contains("selected_candidate"));
    CHECK_FALSE(j.contains("rounds"));
    for (const VerifyCheck& check : verify_report(j, inst)) {
        INFO(check.name << ": " << check.detail);
        CHECK(check.pass);
    }
}

TEST_CASE("population mode run draws nothing and satisfies round invariants") {
    json cfg_json = desk_config("recursive");
    cfg_json["mode"] = "population";
    cfg_json["depth"] = 1;
    RunConfig cfg = parse_run_config(cfg_json);
    Instance inst = load_config_instance(cfg);
    // Use the exact optimum as the estimate.
    GroundTruth gt = brute_force_opt(inst);
    json adjusted = cfg_json;
    adjusted["opt_estimate"] = gt.opt;
    RunConfig cfg2 = parse_run_config(adjusted);
    RunReport report = execute_run(cfg2, inst);
    CHECK(report.budget.total() == 0);
    CHECK(report.max_output_loss <= gt.opt + 32 * 0.1 + 1e-12);
}
