#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "codeplan/errors.hpp"
#include "codeplan/scenario_io.hpp"

using namespace codeplan;
using nlohmann::json;

#ifndef FIXTURES_DIR
#define FIXTURES_DIR "fixtures"
#endif

namespace {

json minimal_doc() {
    return json::parse(R"({
        "local": {
            "blocks": [{"a": 0.0, "c": 0.001}, {"a": 0.0, "c": 0.002}, {"a": 0.0, "c": 0.001}],
            "batch_size": 4,
            "base_accuracy": 0.9
        },
        "s": 2
    })");
}

} // namespace

TEST_CASE("every shipped fixture loads and validates") {
    const std::filesystem::path dir = FIXTURES_DIR;
    for (const char* name : {"exp1_imagenet.json", "exp1_food101.json", "exp1_random.json",
                             "exp2_skip.json", "exp3_mobilenet.json", "exp4.json"}) {
        const LoadedScenario loaded = load_scenario_file(dir / name);
        CHECK(loaded.oracle.type == OracleSpec::Type::table);
        CHECK(loaded.scenario.offload_count == 8);
        CHECK(loaded.scenario.n_f == 100);
    }
    CHECK(load_scenario_file(dir / "exp2_skip.json").scenario.has_host() == false);
    CHECK(load_scenario_file(dir / "exp4.json").scenario_id == "exp4");
    CHECK(load_scenario_file(dir / "exp4.json").search.reward.a_min == 0.86);
    CHECK(load_scenario_file(dir / "exp4.json").search.c_stop == 3);
}

TEST_CASE("defaults apply when optional sections are absent") {
    const LoadedScenario loaded = parse_scenario(minimal_doc(), "mini");
    CHECK(loaded.scenario.n_f == 100);
    CHECK(loaded.search.reward.k == 100.0);
    CHECK(loaded.search.reward.a_min == 0.8);
    CHECK(loaded.search.epsilon == 0.01);
    CHECK(loaded.search.c_stop == 3);
    CHECK(loaded.search.bootstrap == BootstrapRule::first_admissible);
    CHECK(loaded.search.rebuild_predictions == true);
    CHECK(loaded.scenario.entry_link.fixed_cost_a == 0.0);
    CHECK(loaded.oracle.type == OracleSpec::Type::none);
    CHECK_THROWS_AS(make_oracle(loaded), SchemaError);
}

TEST_CASE("unknown keys are rejected with the offending path named") {
    json doc = minimal_doc();
    doc["bogus"] = 1;
    CHECK_THROWS_WITH_AS(parse_scenario(doc, "t"), doctest::Contains("/bogus"), SchemaError);

    doc = minimal_doc();
    doc["local"]["blocks"][1]["x"] = 2;
    CHECK_THROWS_WITH_AS(parse_scenario(doc, "t"), doctest::Contains("/local/blocks/1/x"),
                         SchemaError);

    doc = minimal_doc();
    doc["search"] = {{"kk", 1.0}};
    CHECK_THROWS_WITH_AS(parse_scenario(doc, "t"), doctest::Contains("/search/kk"),
                         SchemaError);
}

TEST_CASE("missing and ill-typed fields are schema errors") {
    json doc = minimal_doc();
    doc.erase("s");
    CHECK_THROWS_WITH_AS(parse_scenario(doc, "t"), doctest::Contains("/s"), SchemaError);

    doc = minimal_doc();
    doc.erase("local");
    CHECK_THROWS_AS(parse_scenario(doc, "t"), SchemaError);

    doc = minimal_doc();
    doc["local"]["blocks"][0].erase("c");
    CHECK_THROWS_AS(parse_scenario(doc, "t"), SchemaError);

    doc = minimal_doc();
    doc["s"] = "two";
    CHECK_THROWS_AS(parse_scenario(doc, "t"), SchemaError);

    doc = minimal_doc();
    doc["local"]["base_accuracy"] = 1.5;
    CHECK_THROWS_AS(parse_scenario(doc, "t"), SchemaError);
}

TEST_CASE("domain violations surface as schema errors with the constraint named") {
    json doc = minimal_doc();
    doc["s"] = 40;
    CHECK_THROWS_WITH_AS(parse_scenario(doc, "t"), doctest::Contains("0 <= s"), SchemaError);

    doc = minimal_doc();
    doc["n_f"] = 2;
    CHECK_THROWS_WITH_AS(parse_scenario(doc, "t"), doctest::Contains("n_f"), SchemaError);
}

TEST_CASE("oracle sections parse into their specs") {
    json doc = minimal_doc();
    doc["oracle"] = {{"type", "synthetic"}, {"base", 0.8},     {"alpha", 0.2},
                     {"beta", 0.1},         {"sigma", 0.01},   {"seed", 7}};
    LoadedScenario loaded = parse_scenario(doc, "t");
    CHECK(loaded.oracle.type == OracleSpec::Type::synthetic);
    CHECK(loaded.oracle.synthetic.seed == 7);
    auto oracle = make_oracle(loaded, 99);
    auto* synthetic = dynamic_cast<SyntheticOracle*>(oracle.get());
    REQUIRE(synthetic != nullptr);
    CHECK(synthetic->config().seed == 99); // --seed override

    doc["oracle"] = {{"type", "external"}, {"command", {"python3", "x.py"}}};
    loaded = parse_scenario(doc, "t");
    CHECK(loaded.oracle.type == OracleSpec::Type::external);
    CHECK(loaded.oracle.timeout_seconds == ExternalOracle::kDefaultTimeoutSeconds);

    doc["oracle"] = {{"type", "table"},
                     {"entries", json::array({{{"r_p", {0, 1, 2, 5}},
                                               {"kind", "cross"},
                                               {"accuracy", 0.8}}})},
                     {"default", 0.7}};
    loaded = parse_scenario(doc, "t");
    CHECK(loaded.oracle.table.size() == 1);
    CHECK(loaded.oracle.table.default_accuracy() == 0.7);
}

TEST_CASE("oracle schema violations are rejected") {
    json doc = minimal_doc();
    doc["oracle"] = {{"type", "nonsense"}};
    CHECK_THROWS_WITH_AS(parse_scenario(doc, "t"), doctest::Contains("/oracle/type"),
                         SchemaError);

    doc["oracle"] = {{"type", "table"}};
    CHECK_THROWS_AS(parse_scenario(doc, "t"), SchemaError);

    // a skip entry must carry the sentinel in both host coordinates
    doc["oracle"] = {{"type", "table"},
                     {"entries", json::array({{{"r_p", {0, 100, 5, 5}},
                                               {"kind", "skip"},
                                               {"accuracy", 0.6}}})}};
    CHECK_THROWS_AS(parse_scenario(doc, "t"), SchemaError);

    doc["oracle"] = {{"type", "external"}, {"command", json::array()}};
    CHECK_THROWS_AS(parse_scenario(doc, "t"), SchemaError);
}

TEST_CASE("table oracles can load from a referenced fixture file") {
    const auto dir = std::filesystem::temp_directory_path() / "codeplan_io_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "table.json");
        out << R"([{"r_p": [0, 100, 100, 2], "kind": "skip", "accuracy": 0.61}])";
    }
    json doc = minimal_doc();
    doc["oracle"] = {{"type", "table"}, {"file", "table.json"}, {"default", 0.5}};
    const LoadedScenario loaded = parse_scenario(doc, "t", dir);
    CHECK(loaded.oracle.table.size() == 1);
    CHECK(loaded.oracle.table.default_accuracy() == 0.5);
}

TEST_CASE("PLAN_ORACLE_TIMEOUT overrides the configured deadline") {
    json doc = minimal_doc();
    doc["oracle"] = {{"type", "external"},
                     {"command", {"python3", "x.py"}},
                     {"timeout", 30.0}};
    const LoadedScenario loaded = parse_scenario(doc, "t");
    setenv("PLAN_ORACLE_TIMEOUT", "1.5", 1);
    auto oracle = make_oracle(loaded);
    unsetenv("PLAN_ORACLE_TIMEOUT");
    auto* external = dynamic_cast<ExternalOracle*>(oracle.get());
    REQUIRE(external != nullptr);
    CHECK(external->timeout_seconds() == 1.5);
}
