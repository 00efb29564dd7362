#ifndef CODEPLAN_THROUGHPUT_HPP
#define CODEPLAN_THROUGHPUT_HPP

#include <utility>
#include <vector>

#include "codeplan/model.hpp"

namespace codeplan {

enum class Bottleneck { local, host };

const char* to_string(Bottleneck b);

/// Steady-state rates of one path, split into the main (local) stream
/// and the offloaded (host) stream. th_total == th_local + th_host holds
/// exactly by construction.
struct PathThroughput {
    double th_local = 0.0;  // samples/second, non-offloaded stream
    double th_host = 0.0;   // samples/second, offloaded stream
    double th_total = 0.0;  // samples/second
    double t_local_cycle = 0.0; // seconds
    double t_host_cycle = 0.0;  // seconds (0 for skip paths)
    Bottleneck bottleneck = Bottleneck::local;
};

/// Unmodified local model: one batch of b_l through every block.
struct BaselineMetrics {
    double th_0 = 0.0; // samples/second
    double t_0 = 0.0;  // seconds per batch
    double a_0 = 0.0;  // local base accuracy
};

BaselineMetrics baseline_throughput(const Scenario& scenario);

/// Per steady-state cycle: s samples fork after block lout, the middle
/// blocks run at b_l - s, the forked samples rejoin at lin with a
/// per-cycle barrier. Host processing overlaps the local middle segment,
/// so the cycle is the max of the two sides. s = 0 degenerates to the
/// baseline (no link or host segment is launched at all).
PathThroughput path_throughput(const Scenario& scenario, const PathSpec& path);

/// P': every enumerated path with th_total strictly above th_0, in
/// lexicographic order. May be empty.
std::vector<std::pair<PathSpec, PathThroughput>> admissible_paths(const Scenario& scenario);

} // namespace codeplan

#endif // CODEPLAN_THROUGHPUT_HPP
