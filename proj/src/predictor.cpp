#include "codeplan/predictor.hpp"

#include <algorithm>
#include <utility>

#include "codeplan/errors.hpp"

namespace codeplan {

double predict_accuracy(const PathSpec& candidate, const EvaluatedSet& known, int n_f) {
    if (known.empty()) {
        throw EmptyKnownSet("cannot predict accuracy from an empty evaluated set");
    }
    std::vector<std::pair<double, double>> terms; // (distance, accuracy)
    terms.reserve(known.size());
    for (const EvaluatedPath& entry : known) {
        const double d = path_distance(candidate, entry.path, n_f);
        if (d == 0.0) {
            return entry.accuracy;
        }
        terms.emplace_back(d, entry.accuracy);
    }
    // Summing in a canonical order makes the prediction bit-identical
    // under any permutation of the known set.
    std::sort(terms.begin(), terms.end());
    double weighted = 0.0;
    double total_weight = 0.0;
    for (const auto& [d, accuracy] : terms) {
        const double w = 1.0 / d;
        weighted += w * accuracy;
        total_weight += w;
    }
    return weighted / total_weight;
}

double predict_average_accuracy(double accuracy, const PathThroughput& tp,
                                const BaselineMetrics& baseline) {
    return (tp.th_local * baseline.a_0 + tp.th_host * accuracy) / tp.th_total;
}

} // namespace codeplan
