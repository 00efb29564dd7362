#include "codeplan/search.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "codeplan/errors.hpp"

namespace codeplan {

const char* to_string(BootstrapRule rule) {
    return rule == BootstrapRule::first_admissible ? "first_admissible" : "cheapest_path";
}

const char* to_string(Termination t) {
    switch (t) {
    case Termination::converged:
        return "converged";
    case Termination::exhausted:
        return "exhausted";
    default:
        return "no_admissible_path";
    }
}

void SearchConfig::validate() const {
    reward.validate();
    if (epsilon < 0.0) {
        throw ValidationError("search epsilon must be >= 0");
    }
    if (c_stop < 1) {
        throw ValidationError("search c_stop must be >= 1");
    }
    if (max_stages < 0) {
        throw ValidationError("search max_stages must be >= 0");
    }
    if (max_evaluations < 1) {
        throw ValidationError("search max_evaluations must be >= 1");
    }
}

namespace {

using Candidate = std::pair<PathSpec, PathThroughput>;

double oracle_accuracy(AccuracyOracle& oracle, const PathSpec& path,
                       const Scenario& scenario) {
    try {
        return oracle.evaluate(path, scenario);
    } catch (const OracleError&) {
        throw; // already carries the path
    }
}

std::size_t bootstrap_index(const std::vector<Candidate>& admissible, BootstrapRule rule) {
    if (rule == BootstrapRule::first_admissible) {
        return 0; // admissible is in lexicographic order
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < admissible.size(); ++i) {
        if (admissible[i].second.th_total > admissible[best].second.th_total) {
            best = i;
        }
    }
    return best;
}

SearchResult finalize(std::vector<PathMetrics> evaluated, std::vector<StageRecord> trace,
                      Termination termination) {
    SearchResult result;
    std::size_t best = 0;
    for (std::size_t i = 1; i < evaluated.size(); ++i) {
        if (evaluated[i].reward > evaluated[best].reward ||
            (evaluated[i].reward == evaluated[best].reward &&
             lex_less(evaluated[i].path, evaluated[best].path))) {
            best = i;
        }
    }
    result.best_path = evaluated[best].path;
    result.best_metrics = evaluated[best];
    result.stages_run = static_cast<int>(trace.size());
    result.termination = termination;
    result.trace = std::move(trace);
    result.evaluated = std::move(evaluated);
    return result;
}

} // namespace

SearchResult code_search(const Scenario& scenario, AccuracyOracle& oracle,
                         const SearchConfig& cfg) {
    cfg.validate();
    const BaselineMetrics baseline = baseline_throughput(scenario);
    const std::vector<Candidate> admissible = admissible_paths(scenario);
    if (admissible.empty()) {
        throw NoAdmissiblePath("no path improves on the baseline throughput");
    }

    const int total = static_cast<int>(admissible.size());
    const int max_stages = cfg.max_stages > 0 ? cfg.max_stages : total;

    SearchState state;
    std::vector<PathMetrics> evaluated_metrics;
    std::vector<bool> done(admissible.size(), false);
    // Predictions kept across stages when rebuild_predictions is off;
    // keyed by index into the admissible list.
    std::map<std::size_t, double> persistent_predictions;

    Termination termination = Termination::exhausted;
    while (state.stage < max_stages &&
           state.evaluated.size() < admissible.size()) {
        state.stage += 1;

        std::size_t pick = admissible.size();
        double predicted_reward = 0.0;
        if (state.evaluated.empty()) {
            pick = bootstrap_index(admissible, cfg.bootstrap);
        } else {
            if (cfg.rebuild_predictions) {
                persistent_predictions.clear();
            }
            double best_pred = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < admissible.size(); ++i) {
                if (done[i]) {
                    continue;
                }
                const auto& [path, tp] = admissible[i];
                double pred;
                if (auto it = persistent_predictions.find(i);
                    it != persistent_predictions.end()) {
                    pred = it->second;
                } else {
                    const double a_hat =
                        predict_accuracy(path, state.evaluated, scenario.n_f);
                    const double a_av_hat =
                        predict_average_accuracy(a_hat, tp, baseline);
                    pred = accuracy_reward(a_av_hat, cfg.reward) *
                           throughput_reward(tp.th_total, baseline.th_0);
                    persistent_predictions.emplace(i, pred);
                }
                // Strict > keeps the lexicographically first maximum,
                // because admissible is in lexicographic order.
                if (pred > best_pred) {
                    best_pred = pred;
                    pick = i;
                }
            }
            predicted_reward = best_pred;
        }

        const auto& [path, tp] = admissible[pick];
        const double accuracy = oracle_accuracy(oracle, path, scenario);
        const PathMetrics metrics =
            reward(path, tp, accuracy, baseline, cfg.reward);

        state.q = metrics.reward;
        if (state.q - state.q_prv < cfg.epsilon) {
            state.c += 1;
        } else {
            state.c = 0;
        }
        state.q_prv = state.q;
        state.evaluated.push_back({path, accuracy});
        evaluated_metrics.push_back(metrics);
        done[pick] = true;
        persistent_predictions.erase(pick);

        state.trace.push_back({state.stage, path, predicted_reward, accuracy,
                               state.q, state.c});

        if (state.c == cfg.c_stop) {
            termination = Termination::converged;
            break;
        }
    }

    return finalize(std::move(evaluated_metrics), std::move(state.trace), termination);
}

SearchResult brute_force(const Scenario& scenario, AccuracyOracle& oracle,
                         const SearchConfig& cfg) {
    cfg.validate();
    const BaselineMetrics baseline = baseline_throughput(scenario);
    const std::vector<Candidate> admissible = admissible_paths(scenario);
    if (admissible.empty()) {
        throw NoAdmissiblePath("no path improves on the baseline throughput");
    }
    if (static_cast<long>(admissible.size()) > cfg.max_evaluations) {
        throw EvaluationBudgetExceeded(
            "brute force would need " + std::to_string(admissible.size()) +
            " oracle evaluations, budget is " + std::to_string(cfg.max_evaluations));
    }

    std::vector<PathMetrics> evaluated_metrics;
    std::vector<StageRecord> trace;
    evaluated_metrics.reserve(admissible.size());
    int stage = 0;
    for (const auto& [path, tp] : admissible) {
        stage += 1;
        const double accuracy = oracle_accuracy(oracle, path, scenario);
        const PathMetrics metrics = reward(path, tp, accuracy, baseline, cfg.reward);
        evaluated_metrics.push_back(metrics);
        trace.push_back({stage, path, metrics.reward, accuracy, metrics.reward, 0});
    }

    return finalize(std::move(evaluated_metrics), std::move(trace), Termination::exhausted);
}

} // namespace codeplan
