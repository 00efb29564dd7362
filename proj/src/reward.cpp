#include "codeplan/reward.hpp"

#include <cmath>

#include "codeplan/errors.hpp"
#include "codeplan/predictor.hpp"

namespace codeplan {

void RewardConfig::validate() const {
    if (!(k > 0.0)) {
        throw ValidationError("reward k must be > 0");
    }
    if (!(a_min > 0.0 && a_min < 1.0)) {
        throw ValidationError("reward a_min must lie in (0,1)");
    }
}

double accuracy_reward(double a_av, const RewardConfig& cfg) {
    return 1.0 / (1.0 + std::exp(-cfg.k * (a_av - cfg.a_min)));
}

double throughput_reward(double th_p, double th_0) {
    return th_p - th_0;
}

PathMetrics reward(const PathSpec& path, const PathThroughput& tp, double a_p,
                   const BaselineMetrics& baseline, const RewardConfig& cfg) {
    PathMetrics m;
    m.path = path;
    m.throughput = tp;
    m.a_p = a_p;
    m.a_av = predict_average_accuracy(a_p, tp, baseline);
    m.reward = accuracy_reward(m.a_av, cfg) * throughput_reward(tp.th_total, baseline.th_0);
    return m;
}

} // namespace codeplan
