#include "codeplan/throughput.hpp"

#include "codeplan/errors.hpp"

namespace codeplan {

const char* to_string(Bottleneck b) {
    return b == Bottleneck::local ? "local" : "host";
}

BaselineMetrics baseline_throughput(const Scenario& scenario) {
    scenario.validate();
    double t_0 = 0.0;
    for (const auto& block : scenario.local.blocks) {
        t_0 += block.time_for(scenario.local.batch_size);
    }
    BaselineMetrics m;
    m.t_0 = t_0;
    m.th_0 = static_cast<double>(scenario.local.batch_size) / t_0;
    m.a_0 = scenario.local.base_accuracy;
    return m;
}

PathThroughput path_throughput(const Scenario& scenario, const PathSpec& path) {
    validate_path(scenario, path);
    const int b_l = scenario.local.batch_size;
    const int s = scenario.offload_count;
    if (s > b_l) {
        throw ValidationError("s exceeds the local batch size");
    }

    PathThroughput tp;
    if (s == 0) {
        const BaselineMetrics base = baseline_throughput(scenario);
        tp.t_local_cycle = base.t_0;
        tp.t_host_cycle = 0.0;
        tp.th_total = base.th_0;
        tp.th_local = base.th_0;
        tp.th_host = 0.0;
        tp.bottleneck = Bottleneck::local;
        return tp;
    }

    double t_local = 0.0;
    for (const auto& block : scenario.local.blocks) {
        if (block.index <= path.lout || block.index >= path.lin) {
            t_local += block.time_for(b_l);
        } else {
            t_local += block.time_for(b_l - s);
        }
    }
    if (path.kind == ConnectionKind::skip) {
        t_local += scenario.skip_link.time_for(s);
    }

    double t_host = 0.0;
    if (path.kind == ConnectionKind::cross) {
        const int b_h = scenario.host->batch_size;
        for (const auto& block : scenario.host->blocks) {
            if (block.index >= path.hin && block.index <= path.hout) {
                t_host += block.time_for(b_h + s);
            } else {
                t_host += block.time_for(b_h);
            }
        }
        t_host += scenario.entry_link.time_for(s);
        t_host += scenario.exit_link.time_for(s);
    }

    const double cycle = t_host > t_local ? t_host : t_local;
    tp.t_local_cycle = t_local;
    tp.t_host_cycle = t_host;
    tp.th_host = static_cast<double>(s) / cycle;
    tp.th_local = static_cast<double>(b_l - s) / cycle;
    // Summing the streams keeps th_total == th_local + th_host an exact
    // identity; it agrees with b_l / cycle to within one ulp.
    tp.th_total = tp.th_local + tp.th_host;
    tp.bottleneck = t_host > t_local ? Bottleneck::host : Bottleneck::local;
    return tp;
}

std::vector<std::pair<PathSpec, PathThroughput>> admissible_paths(const Scenario& scenario) {
    const BaselineMetrics base = baseline_throughput(scenario);
    std::vector<std::pair<PathSpec, PathThroughput>> out;
    for (const PathSpec& path : enumerate_paths(scenario)) {
        PathThroughput tp = path_throughput(scenario, path);
        if (tp.th_total > base.th_0) {
            out.emplace_back(path, tp);
        }
    }
    return out;
}

} // namespace codeplan
