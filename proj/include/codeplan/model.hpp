#ifndef CODEPLAN_MODEL_HPP
#define CODEPLAN_MODEL_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace codeplan {

/// One frozen segment of a block-partitioned DNN model. Processing a
/// batch of m samples takes tau(m) = fixed_cost_a + per_sample_cost_c * m
/// seconds.
struct BlockProfile {
    int index = 0;
    double fixed_cost_a = 0.0;      // seconds per batch launch
    double per_sample_cost_c = 0.0; // seconds per sample

    double time_for(int samples) const {
        return fixed_cost_a + per_sample_cost_c * static_cast<double>(samples);
    }
};

enum class LinkPlacement { on_host, on_local };

/// Timing abstraction of a link module (the small trainable adapter
/// between blocks). Learnable parameters are out of scope; only the
/// launch and per-sample costs matter here.
struct LinkProfile {
    double fixed_cost_a = 0.0;
    double per_sample_cost_c = 0.0;
    LinkPlacement placement = LinkPlacement::on_host;

    double time_for(int samples) const {
        return fixed_cost_a + per_sample_cost_c * static_cast<double>(samples);
    }
};

/// A block-partitioned DNN service: ordered blocks, the batch size it
/// runs with, and its standalone top-1 accuracy.
struct ServiceProfile {
    std::string service_id;
    std::vector<BlockProfile> blocks;
    int batch_size = 1;
    double base_accuracy = 0.0;

    int block_count() const { return static_cast<int>(blocks.size()); }
};

enum class ConnectionKind { cross, skip };

const char* to_string(ConnectionKind kind);

/// One alternative inference route, identified by the tuple
/// r = [lout, hin, hout, lin]. Skip paths carry the sentinel block index
/// n_f in hin/hout so that all paths live in a single metric space.
struct PathSpec {
    int lout = 0;
    int hin = 0;
    int hout = 0;
    int lin = 0;
    ConnectionKind kind = ConnectionKind::cross;

    std::array<int, 4> r() const { return {lout, hin, hout, lin}; }

    /// r with skip sentinels rewritten to the given n_f. Paths built by
    /// enumerate_paths already carry the scenario's n_f; this guards
    /// against hand-built specs with a different convention.
    std::array<int, 4> r_materialized(int n_f) const;

    std::string to_string() const;

    friend bool operator==(const PathSpec& a, const PathSpec& b) {
        return a.r() == b.r() && a.kind == b.kind;
    }
};

/// Lexicographic order on the materialized r tuple; the global
/// deterministic tie-break used everywhere downstream.
bool lex_less(const PathSpec& a, const PathSpec& b);

/// A full offloading scenario: the local service, an optional host
/// service, the link timing profiles, the per-batch offload count s, and
/// the skip sentinel n_f.
struct Scenario {
    ServiceProfile local;
    std::optional<ServiceProfile> host;
    LinkProfile entry_link{0.0, 0.0, LinkPlacement::on_host};
    LinkProfile exit_link{0.0, 0.0, LinkPlacement::on_host};
    LinkProfile skip_link{0.0, 0.0, LinkPlacement::on_local};
    int offload_count = 0; // s
    int n_f = 100;

    bool has_host() const { return host.has_value(); }

    /// Throws ValidationError naming the violated constraint.
    void validate() const;
};

/// Throws ValidationError when the path violates its invariants for this
/// scenario (block ranges, skip sentinel, kind consistency).
void validate_path(const Scenario& scenario, const PathSpec& path);

/// Every legal path of the scenario: all cross paths (when a host is
/// present) and all skip paths, in lexicographic order of
/// (lout, hin, hout, lin), no duplicates.
std::vector<PathSpec> enumerate_paths(const Scenario& scenario);

/// Closed-form path count: C(N_l,2) * (C(N_h,2) + N_h) cross paths plus
/// C(N_l,2) skip paths. host_blocks = 0 means no host.
long long path_count(int local_blocks, int host_blocks);

/// Euclidean distance between the materialized r tuples.
double path_distance(const PathSpec& a, const PathSpec& b, int n_f);

} // namespace codeplan

#endif // CODEPLAN_MODEL_HPP
