#ifndef CODEPLAN_REWARD_HPP
#define CODEPLAN_REWARD_HPP

#include "codeplan/model.hpp"
#include "codeplan/throughput.hpp"

namespace codeplan {

/// Sigmoid slope and accuracy floor for the accuracy reward term. k
/// operates on the fraction scale, so k = 100 makes one percentage
/// point of average accuracy move the sigmoid argument by 1.
struct RewardConfig {
    double k = 100.0;
    double a_min = 0.8;

    void validate() const;
};

/// Everything known about one scored path.
struct PathMetrics {
    PathSpec path;
    PathThroughput throughput;
    double a_p = 0.0;   // true path accuracy
    double a_av = 0.0;  // throughput-weighted average accuracy
    double reward = 0.0;
};

/// xi = sigmoid(k * (a_av - a_min)), strictly increasing, 0.5 at the floor.
double accuracy_reward(double a_av, const RewardConfig& cfg);

/// zeta = th_p - th_0, the raw throughput gain.
double throughput_reward(double th_p, double th_0);

/// Assembles the average accuracy and the reward F = xi * zeta.
PathMetrics reward(const PathSpec& path, const PathThroughput& tp, double a_p,
                   const BaselineMetrics& baseline, const RewardConfig& cfg);

} // namespace codeplan

#endif // CODEPLAN_REWARD_HPP
