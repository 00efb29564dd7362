#ifndef CODEPLAN_DESSIM_HPP
#define CODEPLAN_DESSIM_HPP

#include <optional>
#include <vector>

#include "codeplan/model.hpp"

namespace codeplan {

struct SimConfig {
    Scenario scenario;
    std::optional<PathSpec> path; // absent = baseline run
    int n_batches = 1000;
    int warmup_batches = 0;

    void validate() const;
};

/// One processed op completion; the unit of the deterministic event
/// trace. service: 0 = local device, 1 = host device. op identifies the
/// position in the device's per-batch program.
struct SimEvent {
    double time = 0.0;
    int service = 0;
    int op = 0;
    int batch = 0;
};

struct SimReport {
    double measured_th_total = 0.0; // samples/second over the window
    double measured_th_local = 0.0;
    double measured_th_host = 0.0;
    double host_own_throughput = 0.0; // host's own workload rate (cross runs)
    std::vector<double> local_busy_fraction; // one per local block
    std::vector<double> host_busy_fraction;  // one per host block; empty if host idle
    double entry_link_busy_fraction = 0.0;
    double exit_link_busy_fraction = 0.0;
    double skip_link_busy_fraction = 0.0;
    long completed_batches = 0;   // batches inside the measurement window
    long samples_admitted = 0;    // whole run
    long samples_completed = 0;   // whole run: mainstream + rejoined riders
    long riders_in_flight = 0;    // forked but not rejoined at sim end
    long event_count = 0;
    double duration = 0.0; // completion time of the last batch
};

/// Event-driven execution of the batch pipeline(s). Batches of b_l run
/// back-to-back through the local blocks (one batch in flight; blocks
/// are serially reusable). On a path run with s >= 1, s samples fork
/// after block lout; on a cross path they traverse the host cycle
/// (entry link, blocks hin..hout at b_h + s, exit link, around the
/// host's own workload) and rejoin at the next batch boundary at lin;
/// on a skip path the skip link runs inline on the local device.
/// Throughput is measured over post-warmup completions.
SimReport simulate(const SimConfig& cfg);

/// Same, also recording the processed event trace (for determinism
/// checks and debugging).
SimReport simulate(const SimConfig& cfg, std::vector<SimEvent>* trace);

} // namespace codeplan

#endif // CODEPLAN_DESSIM_HPP
