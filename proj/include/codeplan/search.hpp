#ifndef CODEPLAN_SEARCH_HPP
#define CODEPLAN_SEARCH_HPP

#include <vector>

#include "codeplan/model.hpp"
#include "codeplan/oracle.hpp"
#include "codeplan/predictor.hpp"
#include "codeplan/reward.hpp"
#include "codeplan/throughput.hpp"

namespace codeplan {

/// Stage-1 rule: the surrogate has no history yet, so the first
/// evaluation target must be picked without predictions.
enum class BootstrapRule {
    first_admissible, // lexicographically first member of P'
    cheapest_path,    // highest-throughput member of P' (lex tie-break)
};

const char* to_string(BootstrapRule rule);

struct SearchConfig {
    RewardConfig reward;
    double epsilon = 0.01;
    int c_stop = 3;
    BootstrapRule bootstrap = BootstrapRule::first_admissible;
    int max_stages = 0; // 0 means |P'|
    /// Rebuild the predicted-reward map from the full evaluated set each
    /// stage (default) instead of letting first-seen predictions persist.
    bool rebuild_predictions = true;
    /// Budget guard for brute_force.
    long max_evaluations = 1000000;

    void validate() const;
};

/// Audit record of one search stage.
struct StageRecord {
    int stage = 0;
    PathSpec predicted_best;
    double predicted_reward = 0.0; // 0 for the bootstrap stage
    double true_accuracy = 0.0;
    double true_reward = 0.0; // q
    int c_after = 0;
};

/// Mutable state of a running search (Algorithm state n, P^n, q, q_prv, c).
struct SearchState {
    int stage = 0;
    EvaluatedSet evaluated;
    double q = 0.0;
    double q_prv = -1.0;
    int c = 0;
    std::vector<StageRecord> trace;
};

enum class Termination { converged, exhausted, no_admissible_path };

const char* to_string(Termination t);

struct SearchResult {
    PathSpec best_path;
    PathMetrics best_metrics;
    int stages_run = 0;
    Termination termination = Termination::exhausted;
    std::vector<StageRecord> trace;
    /// Full metrics of every oracle-evaluated path, in evaluation order.
    std::vector<PathMetrics> evaluated;
};

/// Surrogate-guided stagewise search. Each stage predicts the accuracy
/// of every not-yet-evaluated admissible path by inverse-distance
/// weighting over the evaluated set, scores the predictions, evaluates
/// the predicted-best path with the oracle exactly once, and stops after
/// c_stop consecutive stages whose true reward improved by less than
/// epsilon. Returns the best path by true reward among all evaluated
/// paths. Throws NoAdmissiblePath when P' is empty and propagates oracle
/// errors with the offending path attached.
SearchResult code_search(const Scenario& scenario, AccuracyOracle& oracle,
                         const SearchConfig& cfg);

/// Exhaustive baseline: evaluates every member of P' (subject to
/// cfg.max_evaluations) and returns the true-reward argmax.
SearchResult brute_force(const Scenario& scenario, AccuracyOracle& oracle,
                         const SearchConfig& cfg);

} // namespace codeplan

#endif // CODEPLAN_SEARCH_HPP
