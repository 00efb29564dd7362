#ifndef CODEPLAN_PREDICTOR_HPP
#define CODEPLAN_PREDICTOR_HPP

#include <vector>

#include "codeplan/model.hpp"
#include "codeplan/throughput.hpp"

namespace codeplan {

/// A path whose true accuracy has been measured by the oracle.
struct EvaluatedPath {
    PathSpec path;
    double accuracy = 0.0;
};

/// The evaluated set P^{n-1}: insertion-ordered, no duplicate r tuples.
using EvaluatedSet = std::vector<EvaluatedPath>;

/// Inverse-distance-weighted accuracy estimate over the known set. A
/// zero-distance match short-circuits to the stored accuracy (known
/// paths need no prediction). Throws EmptyKnownSet when known is empty.
double predict_accuracy(const PathSpec& candidate, const EvaluatedSet& known, int n_f);

/// Throughput-weighted blend of the base accuracy and the (predicted or
/// true) path accuracy: (th_local * a_0 + th_host * a_p) / th_total.
double predict_average_accuracy(double accuracy, const PathThroughput& tp,
                                const BaselineMetrics& baseline);

} // namespace codeplan

#endif // CODEPLAN_PREDICTOR_HPP
