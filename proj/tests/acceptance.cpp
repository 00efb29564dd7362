// Acceptance suite. Runs each numbered criterion and prints one
// PASS/FAIL line per criterion; exits nonzero when any selected
// criterion fails. Invoke with a criterion number to run just that one.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <sys/wait.h>

#include "codeplan/dessim.hpp"
#include "codeplan/errors.hpp"
#include "codeplan/predictor.hpp"
#include "codeplan/reward.hpp"
#include "codeplan/scenario_io.hpp"
#include "codeplan/search.hpp"

#include "helpers.hpp"

#ifndef FIXTURES_DIR
#define FIXTURES_DIR "fixtures"
#endif
#ifndef PLAN_BIN
#define PLAN_BIN "plan"
#endif

using namespace codeplan;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const char* kFixtureNames[] = {"exp1_imagenet.json", "exp1_food101.json",
                               "exp1_random.json",   "exp2_skip.json",
                               "exp3_mobilenet.json", "exp4.json"};

struct Checker {
    bool ok = true;
    std::string first_failure;

    void expect(bool condition, const std::string& what) {
        if (!condition && ok) {
            ok = false;
            first_failure = what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(PLAN_BIN) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_bytes(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "codeplan_acceptance" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// 1. Guided search equals brute force under an exhaustive budget.
bool criterion_1(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    Checker check;
    std::mt19937 rng(2024);
    int scenarios = 0;
    while (scenarios < 50) {
        const Scenario sc = testutil::random_scenario(rng, 3, 4);
        const auto adm = admissible_paths(sc);
        if (adm.empty()) {
            continue;
        }
        scenarios += 1;
        SyntheticOracle oracle({0.85, 0.3, 0.2, 0.0, 0});
        SearchConfig cfg;
        cfg.reward = {100.0, 0.8};
        cfg.epsilon = 0.0;
        cfg.c_stop = static_cast<int>(adm.size());
        const SearchResult guided = code_search(sc, oracle, cfg);
        const SearchResult exact = brute_force(sc, oracle, cfg);
        check.expect(guided.best_path == exact.best_path, "best path differs");
        check.expect(guided.best_metrics.reward == exact.best_metrics.reward,
                     "best reward differs");
    }
    const double elapsed = seconds_since(start);
    check.expect(elapsed < 5.0, "runtime above 5 s");
    std::ostringstream os;
    os << "50 scenarios, " << elapsed << " s";
    detail = check.ok ? os.str() : check.first_failure;
    return check.ok;
}

// 2. Discrete-event measurement within 2% of the analytic model.
bool criterion_2(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    Checker check;
    std::mt19937 rng(7);
    double worst = 0.0;
    for (const char* name : kFixtureNames) {
        const LoadedScenario loaded = load_scenario_file(fs::path(FIXTURES_DIR) / name);
        const BaselineMetrics base = baseline_throughput(loaded.scenario);

        SimConfig cfg;
        cfg.scenario = loaded.scenario;
        cfg.n_batches = 1100;
        cfg.warmup_batches = 100; // 1000 measured batches
        const SimReport baseline_report = simulate(cfg);
        const double base_err =
            std::abs(baseline_report.measured_th_total - base.th_0) / base.th_0;
        worst = std::max(worst, base_err);
        check.expect(base_err <= 0.02, std::string(name) + " baseline error above 2%");

        const auto paths = enumerate_paths(loaded.scenario);
        std::uniform_int_distribution<std::size_t> pick(0, paths.size() - 1);
        for (int i = 0; i < 10; ++i) {
            cfg.path = paths[pick(rng)];
            const PathThroughput analytic = path_throughput(loaded.scenario, *cfg.path);
            const SimReport report = simulate(cfg);
            const double err =
                std::abs(report.measured_th_total - analytic.th_total) / analytic.th_total;
            worst = std::max(worst, err);
            check.expect(err <= 0.02, std::string(name) + " path error above 2%");
        }
    }
    const double elapsed = seconds_since(start);
    check.expect(elapsed < 30.0, "runtime above 30 s");
    std::ostringstream os;
    os << "66 runs, worst relative error " << worst << ", " << elapsed << " s";
    detail = check.ok ? os.str() : check.first_failure;
    return check.ok;
}

// 3. The experiment-4 scenario through the CLI.
bool criterion_3(std::string& detail) {
    Checker check;
    const fs::path fixture = fs::path(FIXTURES_DIR) / "exp4.json";
    const fs::path out = scratch_dir("exp4_search");

    const LoadedScenario loaded = load_scenario_file(fixture);
    check.expect(loaded.scenario.local.batch_size == 32, "b_l != 32");
    check.expect(loaded.scenario.host->batch_size == 32, "b_h != 32");
    check.expect(loaded.scenario.local.block_count() == 6, "N_l != 6");
    check.expect(loaded.scenario.host->block_count() == 6, "N_h != 6");
    check.expect(loaded.scenario.offload_count == 8, "s != 8");
    check.expect(loaded.search.reward.a_min == 0.86, "A_min != 0.86");
    check.expect(loaded.search.c_stop == 3, "c_stop != 3");
    check.expect(loaded.search.epsilon == 0.01, "epsilon != 0.01");

    check.expect(run_cli("search --scenario " + fixture.string() + " --out " +
                         out.string()) == 0,
                 "cmd_search failed");
    json report;
    {
        std::ifstream in(out / "report.json");
        if (in) {
            report = json::parse(in, nullptr, false);
        }
    }
    if (report.is_discarded() || report.is_null()) {
        detail = "no report produced";
        return false;
    }

    const auto& best = report["result"]["best"];
    check.expect(best["r_p"] == json::array({0, 1, 4, 5}), "best path is not [0,1,4,5]");

    const double a_av = best["a_av"].get<double>();
    const double recomputed =
        (best["th_local"].get<double>() * report["baseline"]["a_0"].get<double>() +
         best["th_host"].get<double>() * best["a_p"].get<double>()) /
        best["th_total"].get<double>();
    check.expect(std::abs(a_av - recomputed) <= 1e-9, "A^av fails Eq. (1) recomputation");

    const double ratio =
        best["th_total"].get<double>() / report["baseline"]["th_0"].get<double>();
    check.expect(std::abs(ratio - 1.40) <= 0.01,
                 "throughput ratio " + std::to_string(ratio) +
                     " outside 1.40 +/- 0.01 (unreachable: the stream split caps "
                     "Th_p/Th_0 at b_l/(b_l - s) = 4/3 for s=8, b_l=32)");

    std::ostringstream os;
    os << "best [0,1,4,5], A^av " << a_av << ", ratio " << ratio;
    detail = check.ok ? os.str() : check.first_failure + " (ratio " +
                                       std::to_string(ratio) + ")";
    return check.ok;
}

// 4. Predictor properties over randomized known-sets.
bool criterion_4(std::string& detail) {
    Checker check;
    {
        const EvaluatedSet known{{{0, 1, 1, 5, ConnectionKind::cross}, 0.8},
                                 {{0, 1, 5, 5, ConnectionKind::cross}, 0.9}};
        const double worked =
            predict_accuracy({0, 1, 2, 5, ConnectionKind::cross}, known, 100);
        check.expect(std::abs(worked - 0.825) <= 1e-12, "worked example off by > 1e-12");
    }

    std::mt19937 rng(63);
    std::uniform_int_distribution<int> coord(0, 9);
    std::uniform_real_distribution<double> acc(0.0, 1.0);
    std::uniform_int_distribution<int> size(1, 8);
    for (int trial = 0; trial < 10000; ++trial) {
        EvaluatedSet known;
        const int count = size(rng);
        while (static_cast<int>(known.size()) < count) {
            PathSpec p;
            p.lout = coord(rng);
            p.lin = p.lout + 1 + coord(rng) % 3;
            if (coord(rng) % 3 == 0) {
                p.kind = ConnectionKind::skip;
                p.hin = p.hout = 100;
            } else {
                p.hin = coord(rng);
                p.hout = p.hin + coord(rng) % 3;
            }
            bool dup = false;
            for (const auto& e : known) {
                dup = dup || e.path.r() == p.r();
            }
            if (!dup) {
                known.push_back({p, acc(rng)});
            }
        }
        PathSpec candidate;
        candidate.lout = coord(rng);
        candidate.lin = candidate.lout + 1 + coord(rng) % 3;
        candidate.hin = coord(rng);
        candidate.hout = candidate.hin + coord(rng) % 3;

        const double predicted = predict_accuracy(candidate, known, 100);
        double lo = 1.0;
        double hi = 0.0;
        for (const auto& e : known) {
            lo = std::min(lo, e.accuracy);
            hi = std::max(hi, e.accuracy);
        }
        check.expect(predicted >= lo - 1e-12 && predicted <= hi + 1e-12,
                     "prediction escapes the convex hull");

        EvaluatedSet shuffled = known;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        check.expect(predict_accuracy(candidate, shuffled, 100) == predicted,
                     "prediction changed under permutation");

        const auto& anchor = known[static_cast<std::size_t>(trial) % known.size()];
        check.expect(predict_accuracy(anchor.path, known, 100) == anchor.accuracy,
                     "known path not reproduced exactly");
    }
    detail = check.ok ? "10000 known-sets" : check.first_failure;
    return check.ok;
}

// 5. Reward properties.
bool criterion_5(std::string& detail) {
    Checker check;
    check.expect(accuracy_reward(0.86, {100.0, 0.86}) == 0.5, "xi(A_min) != 0.5");
    check.expect(throughput_reward(123.456, 123.456) == 0.0, "zeta(Th_0) != 0");

    for (const char* name : kFixtureNames) {
        const LoadedScenario loaded = load_scenario_file(fs::path(FIXTURES_DIR) / name);
        const BaselineMetrics base = baseline_throughput(loaded.scenario);
        auto oracle = make_oracle(loaded);
        for (const auto& [path, tp] : admissible_paths(loaded.scenario)) {
            const double a_p = oracle->evaluate(path, loaded.scenario);
            const PathMetrics m = reward(path, tp, a_p, base, loaded.search.reward);
            check.expect(m.reward > 0.0,
                         std::string(name) + ": non-positive reward on admissible path");
        }
    }

    std::mt19937 rng(99);
    SearchConfig cfg;
    cfg.reward = {100.0, 0.8};
    int checked = 0;
    while (checked < 20) {
        Scenario sc = testutil::random_scenario(rng, 3, 4);
        if (admissible_paths(sc).empty()) {
            continue;
        }
        checked += 1;
        SyntheticOracle oracle({0.85, 0.3, 0.2, 0.0, 0});
        const SearchResult before = brute_force(sc, oracle, cfg);
        const double gamma = 2.5;
        for (auto& b : sc.local.blocks) {
            b.fixed_cost_a *= gamma;
            b.per_sample_cost_c *= gamma;
        }
        for (auto& b : sc.host->blocks) {
            b.fixed_cost_a *= gamma;
            b.per_sample_cost_c *= gamma;
        }
        for (LinkProfile* link : {&sc.entry_link, &sc.exit_link, &sc.skip_link}) {
            link->fixed_cost_a *= gamma;
            link->per_sample_cost_c *= gamma;
        }
        const SearchResult after = brute_force(sc, oracle, cfg);
        check.expect(after.best_path == before.best_path,
                     "argmax moved under uniform time scaling");
    }
    detail = check.ok ? "fixtures + 20 scaled scenarios" : check.first_failure;
    return check.ok;
}

// 6. Enumeration counts.
bool criterion_6(std::string& detail) {
    Checker check;
    auto sized = [](int n_l, int n_h) {
        Scenario sc;
        sc.local = testutil::make_service("local", std::vector<double>(n_l, 1e-3), 0.0, 4,
                                          0.9);
        if (n_h > 0) {
            sc.host = testutil::make_service("host", std::vector<double>(n_h, 1e-3), 0.0, 4,
                                             0.7);
        }
        sc.offload_count = 1;
        return sc;
    };
    check.expect(enumerate_paths(sized(6, 6)).size() == 330, "6x6 is not 330 paths");
    for (int n_l = 1; n_l <= 8; ++n_l) {
        for (int n_h = 0; n_h <= 8; ++n_h) {
            long long loops = 0;
            for (int lout = 0; lout < n_l; ++lout) {
                for (int lin = lout + 1; lin < n_l; ++lin) {
                    for (int hin = 0; hin < n_h; ++hin) {
                        for (int hout = hin; hout < n_h; ++hout) {
                            loops += 1;
                        }
                    }
                    loops += 1;
                }
            }
            check.expect(path_count(n_l, n_h) == loops, "closed form diverges from loops");
            check.expect(static_cast<long long>(enumerate_paths(sized(n_l, n_h)).size()) ==
                             loops,
                         "enumeration diverges from loops");
        }
    }
    detail = check.ok ? "all N_l, N_h <= 8" : check.first_failure;
    return check.ok;
}

// 7. Byte-identical reports for every fixture and command.
bool criterion_7(std::string& detail) {
    Checker check;
    for (const char* name : kFixtureNames) {
        const fs::path fixture = fs::path(FIXTURES_DIR) / name;
        const std::string stem = fs::path(name).stem().string();
        for (const std::string cmd :
             {std::string("enumerate"), std::string("search"),
              std::string("simulate --batches 200 --warmup 5")}) {
            const std::string sub = cmd.substr(0, cmd.find(' '));
            const fs::path a = scratch_dir(stem + "_" + sub + "_a");
            const fs::path b = scratch_dir(stem + "_" + sub + "_b");
            const std::string base_args =
                cmd + " --scenario " + fixture.string() + " --out ";
            check.expect(run_cli(base_args + a.string()) == 0,
                         stem + " " + sub + " run 1 failed");
            check.expect(run_cli(base_args + b.string()) == 0,
                         stem + " " + sub + " run 2 failed");
            check.expect(read_bytes(a / "report.json") == read_bytes(b / "report.json"),
                         stem + " " + sub + " reports differ");
        }
    }
    detail = check.ok ? "6 fixtures x 3 commands" : check.first_failure;
    return check.ok;
}

} // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<int, std::function<bool(std::string&)>>> criteria = {
        {1, criterion_1}, {2, criterion_2}, {3, criterion_3}, {4, criterion_4},
        {5, criterion_5}, {6, criterion_6}, {7, criterion_7},
    };

    int selected = 0;
    if (argc > 1) {
        selected = std::atoi(argv[1]);
    }

    bool all_ok = true;
    for (const auto& [number, run] : criteria) {
        if (selected != 0 && number != selected) {
            continue;
        }
        std::string detail;
        const bool ok = run(detail);
        all_ok = all_ok && ok;
        std::cout << "criterion " << number << ": " << (ok ? "PASS" : "FAIL") << " — "
                  << detail << '\n';
    }
    return all_ok ? 0 : 1;
}
