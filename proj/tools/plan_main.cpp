// plan: scenario ingestion, path planning and simulation from the
// command line. Exit codes: 0 success, 1 usage, 2 schema or validation
// error, 3 oracle error, 4 no admissible path.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "codeplan/dessim.hpp"
#include "codeplan/errors.hpp"
#include "codeplan/report.hpp"
#include "codeplan/scenario_io.hpp"
#include "codeplan/search.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSchema = 2;
constexpr int kExitOracle = 3;
constexpr int kExitNoAdmissiblePath = 4;

codeplan::PathSpec parse_path_arg(const std::string& arg, const codeplan::Scenario& sc) {
    std::array<int, 4> r{};
    std::istringstream is(arg);
    for (int i = 0; i < 4; ++i) {
        std::string tok;
        if (!std::getline(is, tok, ',')) {
            throw codeplan::ValidationError("--path expects four comma-separated indices");
        }
        try {
            r[static_cast<std::size_t>(i)] = std::stoi(tok);
        } catch (const std::exception&) {
            throw codeplan::ValidationError("--path: \"" + tok + "\" is not an integer");
        }
    }
    std::string rest;
    if (std::getline(is, rest) && !rest.empty()) {
        throw codeplan::ValidationError("--path expects exactly four indices");
    }
    codeplan::PathSpec path{r[0], r[1], r[2], r[3], codeplan::ConnectionKind::cross};
    if (r[1] == sc.n_f && r[2] == sc.n_f) {
        path.kind = codeplan::ConnectionKind::skip;
    }
    codeplan::validate_path(sc, path);
    return path;
}

int run(int argc, char** argv) {
    CLI::App app{"Coordinated DNN inference path planner and simulator"};
    app.require_subcommand(1);

    std::string scenario_file;
    std::string out_dir;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--scenario", scenario_file, "Scenario JSON document")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--out", out_dir, "Output directory for report.json and CSV")
            ->required();
    };

    auto* enumerate_cmd =
        app.add_subcommand("enumerate", "List every legal path with throughput columns");
    int jobs = 1;
    add_common(enumerate_cmd);
    enumerate_cmd->add_option("--jobs", jobs, "Worker threads for path scoring")
        ->check(CLI::PositiveNumber);

    auto* search_cmd = app.add_subcommand("search", "Run the path search");
    bool brute = false;
    std::optional<std::uint64_t> seed;
    add_common(search_cmd);
    search_cmd->add_flag("--brute-force", brute, "Evaluate every admissible path");
    search_cmd->add_option("--seed", seed, "Override the synthetic oracle seed");

    auto* simulate_cmd =
        app.add_subcommand("simulate", "Discrete-event validation of the analytic model");
    std::string path_arg;
    int n_batches = 1000;
    int warmup = 10;
    add_common(simulate_cmd);
    simulate_cmd->add_option("--path", path_arg,
                             "Path tuple lout,hin,hout,lin (omit for the baseline)");
    simulate_cmd->add_option("--batches", n_batches, "Local batches to simulate")
        ->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--warmup", warmup, "Batches excluded from measurement")
        ->check(CLI::NonNegativeNumber);

    CLI11_PARSE(app, argc, argv);

    const codeplan::LoadedScenario loaded = codeplan::load_scenario_file(scenario_file);

    if (enumerate_cmd->parsed()) {
        const auto doc = codeplan::report::enumerate_report(loaded, jobs);
        codeplan::report::write(doc, codeplan::report::paths_csv(doc), "paths.csv", out_dir);
    } else if (search_cmd->parsed()) {
        auto oracle = codeplan::make_oracle(loaded, seed);
        const codeplan::SearchResult result =
            brute ? codeplan::brute_force(loaded.scenario, *oracle, loaded.search)
                  : codeplan::code_search(loaded.scenario, *oracle, loaded.search);
        const auto doc = codeplan::report::search_report(loaded, result,
                                                         brute ? "brute_force" : "code");
        codeplan::report::write(doc, codeplan::report::trace_csv(doc), "trace.csv", out_dir);
    } else {
        codeplan::SimConfig cfg;
        cfg.scenario = loaded.scenario;
        if (!path_arg.empty()) {
            cfg.path = parse_path_arg(path_arg, loaded.scenario);
        }
        cfg.n_batches = n_batches;
        cfg.warmup_batches = warmup;
        const codeplan::SimReport sim = codeplan::simulate(cfg);
        const auto doc = codeplan::report::simulate_report(loaded, cfg, sim);
        codeplan::report::write(doc, codeplan::report::sim_csv(doc), "sim.csv", out_dir);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const codeplan::NoAdmissiblePath& e) {
        std::cerr << "plan: " << e.what() << '\n';
        return kExitNoAdmissiblePath;
    } catch (const codeplan::OracleError& e) {
        std::cerr << "plan: oracle: " << e.what() << '\n';
        return kExitOracle;
    } catch (const codeplan::SchemaError& e) {
        std::cerr << "plan: " << e.what() << '\n';
        return kExitSchema;
    } catch (const codeplan::ValidationError& e) {
        std::cerr << "plan: " << e.what() << '\n';
        return kExitSchema;
    } catch (const codeplan::Error& e) {
        std::cerr << "plan: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "plan: unexpected error: " << e.what() << '\n';
        return kExitUsage;
    }
}
