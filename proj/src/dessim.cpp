#include "codeplan/dessim.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <tuple>

#include "codeplan/errors.hpp"

namespace codeplan {

void SimConfig::validate() const {
    scenario.validate();
    if (path) {
        validate_path(scenario, *path);
    }
    if (n_batches < 1) {
        throw ValidationError("sim n_batches must be >= 1");
    }
    if (warmup_batches < 0 || warmup_batches >= n_batches) {
        throw ValidationError("sim warmup_batches must satisfy 0 <= warmup < n_batches");
    }
}

namespace {

enum class Resource { local_block, host_block, entry_link, exit_link, skip_link };

struct Step {
    Resource res;
    int index = 0;   // block index for block steps
    int samples = 0; // batch size at this step
    bool fork_after = false;   // local: riders leave for the host here
    bool join_before = false;  // local: barrier for the previous batch's riders
    bool deliver_after = false; // host: riders rejoin the local side here
};

struct Completion {
    double time;
    int service; // 0 local, 1 host
    int op;      // index into the device program
    int batch;
};

// Ties resolve local-before-host, then by program position, then batch.
struct CompletionLater {
    bool operator()(const Completion& a, const Completion& b) const {
        return std::tie(a.time, a.service, a.op, a.batch) >
               std::tie(b.time, b.service, b.op, b.batch);
    }
};

double step_duration(const Scenario& sc, const Step& st) {
    switch (st.res) {
    case Resource::local_block:
        return sc.local.blocks[static_cast<std::size_t>(st.index)].time_for(st.samples);
    case Resource::host_block:
        return sc.host->blocks[static_cast<std::size_t>(st.index)].time_for(st.samples);
    case Resource::entry_link:
        return sc.entry_link.time_for(st.samples);
    case Resource::exit_link:
        return sc.exit_link.time_for(st.samples);
    default:
        return sc.skip_link.time_for(st.samples);
    }
}

struct Engine {
    const Scenario& sc;
    const std::optional<PathSpec>& path;
    int n_batches;
    bool cross; // host side simulated
    std::vector<Step> local_program;
    std::vector<Step> host_program;

    std::priority_queue<Completion, std::vector<Completion>, CompletionLater> queue;

    // local device
    int local_batch = 0;
    int local_op = 0;
    bool local_parked = false;

    // host device
    bool host_busy = false;
    int host_rider = -1; // rider batch the host is serving
    int host_op = 0;
    std::deque<int> rider_queue;
    int delivered_up_to = -1; // highest rider batch delivered, in order

    // accounting
    std::vector<double> local_busy;
    std::vector<double> host_busy_time;
    double entry_busy = 0.0, exit_busy = 0.0, skip_busy = 0.0;
    std::vector<double> completion_times;
    std::vector<double> host_cycle_ends;
    long events = 0;
    std::vector<SimEvent>* trace;

    Engine(const SimConfig& cfg, std::vector<SimEvent>* trace_sink)
        : sc(cfg.scenario), path(cfg.path), n_batches(cfg.n_batches), trace(trace_sink) {
        const int s = sc.offload_count;
        const bool active = path.has_value() && s >= 1;
        cross = active && path->kind == ConnectionKind::cross;
        build_local_program(active);
        if (cross) {
            build_host_program();
        }
        local_busy.assign(sc.local.blocks.size(), 0.0);
        if (cross) {
            host_busy_time.assign(sc.host->blocks.size(), 0.0);
        }
    }

    void build_local_program(bool active) {
        const int b_l = sc.local.batch_size;
        const int s = sc.offload_count;
        for (const auto& block : sc.local.blocks) {
            Step st{Resource::local_block, block.index, b_l, false, false, false};
            if (active) {
                if (block.index > path->lout && block.index < path->lin) {
                    st.samples = b_l - s;
                }
                if (cross && block.index == path->lout) {
                    st.fork_after = true;
                }
                if (cross && block.index == path->lin) {
                    st.join_before = true;
                }
            }
            local_program.push_back(st);
            if (active && path->kind == ConnectionKind::skip &&
                block.index == path->lout) {
                local_program.push_back({Resource::skip_link, 0, s, false, false, false});
            }
        }
    }

    void build_host_program() {
        const int b_h = sc.host->batch_size;
        const int s = sc.offload_count;
        for (const auto& block : sc.host->blocks) {
            if (block.index == path->hin) {
                host_program.push_back({Resource::entry_link, 0, s, false, false, false});
            }
            const bool carries = block.index >= path->hin && block.index <= path->hout;
            host_program.push_back({Resource::host_block, block.index,
                                    carries ? b_h + s : b_h, false, false, false});
            if (block.index == path->hout) {
                host_program.push_back({Resource::exit_link, 0, s, false, false, true});
            }
        }
    }

    void start_local_op(double now) {
        const Step& st = local_program[static_cast<std::size_t>(local_op)];
        if (st.join_before && local_batch >= 1 && delivered_up_to < local_batch - 1) {
            local_parked = true;
            return;
        }
        local_parked = false;
        queue.push({now + step_duration(sc, st), 0, local_op, local_batch});
    }

    void start_host_cycle(double now) {
        host_busy = true;
        host_rider = rider_queue.front();
        rider_queue.pop_front();
        host_op = 0;
        queue.push({now + step_duration(sc, host_program[0]), 1, 0, host_rider});
    }

    void attribute(const Step& st, double dur, bool host_side) {
        switch (st.res) {
        case Resource::local_block:
            local_busy[static_cast<std::size_t>(st.index)] += dur;
            break;
        case Resource::host_block:
            host_busy_time[static_cast<std::size_t>(st.index)] += dur;
            break;
        case Resource::entry_link:
            entry_busy += dur;
            break;
        case Resource::exit_link:
            exit_busy += dur;
            break;
        case Resource::skip_link:
            skip_busy += dur;
            break;
        }
        (void)host_side;
    }

    void run() {
        start_local_op(0.0);
        while (!queue.empty()) {
            const Completion ev = queue.top();
            queue.pop();
            events += 1;
            if (trace) {
                trace->push_back({ev.time, ev.service, ev.op, ev.batch});
            }
            if (ev.service == 0) {
                if (handle_local(ev)) {
                    return; // last batch completed
                }
            } else {
                handle_host(ev);
            }
        }
    }

    // Returns true when the final batch has completed.
    bool handle_local(const Completion& ev) {
        const Step& st = local_program[static_cast<std::size_t>(ev.op)];
        attribute(st, step_duration(sc, st), false);
        if (st.fork_after) {
            rider_queue.push_back(ev.batch);
            if (!host_busy) {
                start_host_cycle(ev.time);
            }
        }
        local_op += 1;
        if (local_op == static_cast<int>(local_program.size())) {
            completion_times.push_back(ev.time);
            if (ev.batch + 1 == n_batches) {
                return true;
            }
            local_batch += 1;
            local_op = 0;
        }
        start_local_op(ev.time);
        return false;
    }

    void handle_host(const Completion& ev) {
        const Step& st = host_program[static_cast<std::size_t>(ev.op)];
        attribute(st, step_duration(sc, st), true);
        if (st.deliver_after) {
            delivered_up_to = ev.batch;
            if (local_parked) {
                start_local_op(ev.time);
            }
        }
        host_op += 1;
        if (host_op == static_cast<int>(host_program.size())) {
            host_cycle_ends.push_back(ev.time);
            host_busy = false;
            if (!rider_queue.empty()) {
                start_host_cycle(ev.time);
            }
            return;
        }
        queue.push({ev.time + step_duration(sc, host_program[static_cast<std::size_t>(host_op)]),
                    1, host_op, host_rider});
    }
};

} // namespace

SimReport simulate(const SimConfig& cfg, std::vector<SimEvent>* trace) {
    cfg.validate();
    Engine engine(cfg, trace);
    engine.run();

    const Scenario& sc = cfg.scenario;
    const int b_l = sc.local.batch_size;
    const int s = sc.offload_count;
    const bool active = cfg.path.has_value() && s >= 1;
    const bool cross = engine.cross;
    const int n = cfg.n_batches;
    const int w = cfg.warmup_batches;

    SimReport report;
    const double t_end = engine.completion_times.back();
    const double t_start = w == 0 ? 0.0 : engine.completion_times[static_cast<std::size_t>(w - 1)];
    const double window = t_end - t_start;

    long mainstream = 0;
    long riders = 0;
    for (int k = w; k < n; ++k) {
        mainstream += active ? b_l - s : b_l;
        if (active) {
            riders += cross ? (k >= 1 ? s : 0) : s;
        }
    }
    report.measured_th_local = static_cast<double>(mainstream) / window;
    report.measured_th_host = static_cast<double>(riders) / window;
    report.measured_th_total = report.measured_th_local + report.measured_th_host;
    report.completed_batches = n - w;
    report.duration = t_end;
    report.event_count = engine.events;

    // Whole-run sample conservation.
    report.samples_admitted = static_cast<long>(n) * b_l;
    long joined = 0;
    if (active) {
        joined = cross ? static_cast<long>(n - 1) * s : static_cast<long>(n) * s;
    }
    report.samples_completed = static_cast<long>(n) * (active ? b_l - s : b_l) + joined;
    report.riders_in_flight = report.samples_admitted - report.samples_completed;

    report.local_busy_fraction.resize(engine.local_busy.size());
    for (std::size_t i = 0; i < engine.local_busy.size(); ++i) {
        report.local_busy_fraction[i] = engine.local_busy[i] / t_end;
    }
    report.host_busy_fraction.resize(engine.host_busy_time.size());
    for (std::size_t i = 0; i < engine.host_busy_time.size(); ++i) {
        report.host_busy_fraction[i] = engine.host_busy_time[i] / t_end;
    }
    report.entry_link_busy_fraction = engine.entry_busy / t_end;
    report.exit_link_busy_fraction = engine.exit_busy / t_end;
    report.skip_link_busy_fraction = engine.skip_busy / t_end;

    if (cross) {
        long own_batches = 0;
        for (double t : engine.host_cycle_ends) {
            if (t > t_start && t <= t_end) {
                own_batches += 1;
            }
        }
        report.host_own_throughput =
            static_cast<double>(own_batches * sc.host->batch_size) / window;
    }
    return report;
}

SimReport simulate(const SimConfig& cfg) {
    return simulate(cfg, nullptr);
}

} // namespace codeplan
