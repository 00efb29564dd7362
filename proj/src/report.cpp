#include "codeplan/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "codeplan/errors.hpp"

namespace codeplan::report {

namespace {

using nlohmann::json;

json baseline_json(const BaselineMetrics& base) {
    json j;
    j["a_0"] = base.a_0;
    j["t_0"] = base.t_0;
    j["th_0"] = base.th_0;
    return j;
}

json throughput_json(const PathSpec& path, const PathThroughput& tp, double th_0) {
    json j;
    j["r_p"] = path.r();
    j["kind"] = to_string(path.kind);
    j["th_local"] = tp.th_local;
    j["th_host"] = tp.th_host;
    j["th_total"] = tp.th_total;
    j["t_local_cycle"] = tp.t_local_cycle;
    j["t_host_cycle"] = tp.t_host_cycle;
    j["bottleneck"] = to_string(tp.bottleneck);
    j["ratio"] = tp.th_total / th_0;
    return j;
}

json metrics_json(const PathMetrics& m, double th_0) {
    json j = throughput_json(m.path, m.throughput, th_0);
    j["a_p"] = m.a_p;
    j["a_av"] = m.a_av;
    j["reward"] = m.reward;
    return j;
}

// CSV cells for doubles reuse the JSON serializer so both renderings of
// a report agree byte for byte.
std::string cell(const json& v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    return v.dump();
}

} // namespace

json enumerate_report(const LoadedScenario& loaded, int jobs) {
    const Scenario& sc = loaded.scenario;
    const BaselineMetrics base = baseline_throughput(sc);
    const std::vector<PathSpec> paths = enumerate_paths(sc);

    std::vector<PathThroughput> tps(paths.size());
    const int workers = std::max(1, jobs);
    if (workers == 1 || paths.size() < 2) {
        for (std::size_t i = 0; i < paths.size(); ++i) {
            tps[i] = path_throughput(sc, paths[i]);
        }
    } else {
        std::vector<std::thread> pool;
        const std::size_t stride =
            (paths.size() + static_cast<std::size_t>(workers) - 1) /
            static_cast<std::size_t>(workers);
        for (int w = 0; w < workers; ++w) {
            const std::size_t lo = static_cast<std::size_t>(w) * stride;
            const std::size_t hi = std::min(paths.size(), lo + stride);
            if (lo >= hi) {
                break;
            }
            pool.emplace_back([&, lo, hi] {
                for (std::size_t i = lo; i < hi; ++i) {
                    tps[i] = path_throughput(sc, paths[i]);
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    json rows = json::array();
    for (std::size_t i = 0; i < paths.size(); ++i) {
        json row = throughput_json(paths[i], tps[i], base.th_0);
        row["admissible"] = tps[i].th_total > base.th_0;
        rows.push_back(std::move(row));
    }

    json doc;
    doc["command"] = "enumerate";
    doc["scenario_id"] = loaded.scenario_id;
    doc["baseline"] = baseline_json(base);
    doc["paths"] = std::move(rows);
    return doc;
}

std::string paths_csv(const json& doc) {
    std::ostringstream os;
    os << "lout,hin,hout,lin,kind,th_local,th_host,th_total,t_local_cycle,"
          "t_host_cycle,bottleneck,ratio,admissible\n";
    for (const auto& row : doc["paths"]) {
        const auto& r = row["r_p"];
        os << cell(r[0]) << ',' << cell(r[1]) << ',' << cell(r[2]) << ',' << cell(r[3])
           << ',' << cell(row["kind"]) << ',' << cell(row["th_local"]) << ','
           << cell(row["th_host"]) << ',' << cell(row["th_total"]) << ','
           << cell(row["t_local_cycle"]) << ',' << cell(row["t_host_cycle"]) << ','
           << cell(row["bottleneck"]) << ',' << cell(row["ratio"]) << ','
           << cell(row["admissible"]) << '\n';
    }
    return os.str();
}

json search_report(const LoadedScenario& loaded, const SearchResult& result,
                   const std::string& method) {
    const BaselineMetrics base = baseline_throughput(loaded.scenario);

    json trace = json::array();
    for (const StageRecord& rec : result.trace) {
        json t;
        t["stage"] = rec.stage;
        t["r_p"] = rec.predicted_best.r();
        t["kind"] = to_string(rec.predicted_best.kind);
        t["predicted_reward"] = rec.predicted_reward;
        t["true_accuracy"] = rec.true_accuracy;
        t["true_reward"] = rec.true_reward;
        t["c_after"] = rec.c_after;
        trace.push_back(std::move(t));
    }

    json evaluated = json::array();
    for (const PathMetrics& m : result.evaluated) {
        evaluated.push_back(metrics_json(m, base.th_0));
    }

    json doc;
    doc["command"] = "search";
    doc["scenario_id"] = loaded.scenario_id;
    doc["baseline"] = baseline_json(base);
    json cfg;
    cfg["method"] = method;
    cfg["k"] = loaded.search.reward.k;
    cfg["a_min"] = loaded.search.reward.a_min;
    cfg["epsilon"] = loaded.search.epsilon;
    cfg["c_stop"] = loaded.search.c_stop;
    cfg["bootstrap"] = to_string(loaded.search.bootstrap);
    cfg["rebuild_q"] = loaded.search.rebuild_predictions;
    doc["config"] = std::move(cfg);
    json res;
    res["best"] = metrics_json(result.best_metrics, base.th_0);
    res["stages_run"] = result.stages_run;
    res["termination"] = to_string(result.termination);
    doc["result"] = std::move(res);
    doc["trace"] = std::move(trace);
    doc["evaluated"] = std::move(evaluated);
    return doc;
}

std::string trace_csv(const json& doc) {
    std::ostringstream os;
    os << "stage,lout,hin,hout,lin,kind,predicted_reward,true_accuracy,"
          "true_reward,c_after\n";
    for (const auto& t : doc["trace"]) {
        const auto& r = t["r_p"];
        os << cell(t["stage"]) << ',' << cell(r[0]) << ',' << cell(r[1]) << ','
           << cell(r[2]) << ',' << cell(r[3]) << ',' << cell(t["kind"]) << ','
           << cell(t["predicted_reward"]) << ',' << cell(t["true_accuracy"]) << ','
           << cell(t["true_reward"]) << ',' << cell(t["c_after"]) << '\n';
    }
    return os.str();
}

json simulate_report(const LoadedScenario& loaded, const SimConfig& cfg,
                     const SimReport& sim) {
    const BaselineMetrics base = baseline_throughput(loaded.scenario);

    json analytic;
    if (cfg.path) {
        const PathThroughput tp = path_throughput(loaded.scenario, *cfg.path);
        analytic = throughput_json(*cfg.path, tp, base.th_0);
    } else {
        analytic["th_local"] = base.th_0;
        analytic["th_host"] = 0.0;
        analytic["th_total"] = base.th_0;
        analytic["t_local_cycle"] = base.t_0;
        analytic["t_host_cycle"] = 0.0;
        analytic["bottleneck"] = "local";
        analytic["ratio"] = 1.0;
    }

    json measured;
    measured["th_local"] = sim.measured_th_local;
    measured["th_host"] = sim.measured_th_host;
    measured["th_total"] = sim.measured_th_total;
    measured["host_own_throughput"] = sim.host_own_throughput;
    measured["completed_batches"] = sim.completed_batches;
    measured["samples_admitted"] = sim.samples_admitted;
    measured["samples_completed"] = sim.samples_completed;
    measured["riders_in_flight"] = sim.riders_in_flight;
    measured["event_count"] = sim.event_count;
    measured["duration"] = sim.duration;

    json busy;
    busy["local"] = sim.local_busy_fraction;
    busy["host"] = sim.host_busy_fraction;
    json links;
    links["entry"] = sim.entry_link_busy_fraction;
    links["exit"] = sim.exit_link_busy_fraction;
    links["skip"] = sim.skip_link_busy_fraction;
    busy["links"] = std::move(links);

    json run;
    run["n_batches"] = cfg.n_batches;
    run["warmup_batches"] = cfg.warmup_batches;
    if (cfg.path) {
        json p;
        p["r_p"] = cfg.path->r();
        p["kind"] = to_string(cfg.path->kind);
        run["path"] = std::move(p);
    } else {
        run["path"] = nullptr;
    }

    json doc;
    doc["command"] = "simulate";
    doc["scenario_id"] = loaded.scenario_id;
    doc["baseline"] = baseline_json(base);
    doc["analytic"] = std::move(analytic);
    doc["measured"] = std::move(measured);
    doc["busy"] = std::move(busy);
    doc["run"] = std::move(run);
    const double expected = doc["analytic"]["th_total"].get<double>();
    doc["relative_error"] =
        std::abs(sim.measured_th_total - expected) / expected;
    return doc;
}

std::string sim_csv(const json& doc) {
    std::ostringstream os;
    os << "kind,lout,hin,hout,lin,analytic_th_total,measured_th_total,"
          "relative_error,analytic_th_local,measured_th_local,analytic_th_host,"
          "measured_th_host,completed_batches\n";
    const auto& run = doc["run"];
    if (run["path"].is_null()) {
        os << "baseline,,,,";
    } else {
        const auto& r = run["path"]["r_p"];
        os << cell(run["path"]["kind"]) << ',' << cell(r[0]) << ',' << cell(r[1]) << ','
           << cell(r[2]) << ',' << cell(r[3]);
    }
    const auto& a = doc["analytic"];
    const auto& m = doc["measured"];
    os << ',' << cell(a["th_total"]) << ',' << cell(m["th_total"]) << ','
       << cell(doc["relative_error"]) << ',' << cell(a["th_local"]) << ','
       << cell(m["th_local"]) << ',' << cell(a["th_host"]) << ','
       << cell(m["th_host"]) << ',' << cell(m["completed_batches"]) << '\n';
    return os.str();
}

void write(const json& doc, const std::string& csv, const std::string& csv_name,
           const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream out(out_dir / "report.json", std::ios::binary);
        if (!out) {
            throw Error("cannot write " + (out_dir / "report.json").string());
        }
        out << doc.dump(2) << '\n';
    }
    {
        std::ofstream out(out_dir / csv_name, std::ios::binary);
        if (!out) {
            throw Error("cannot write " + (out_dir / csv_name).string());
        }
        out << csv;
    }
}

} // namespace codeplan::report
