#ifndef CODEPLAN_TESTS_HELPERS_HPP
#define CODEPLAN_TESTS_HELPERS_HPP

#include <random>
#include <vector>

#include "codeplan/model.hpp"

namespace testutil {

inline codeplan::ServiceProfile make_service(std::string id, std::vector<double> costs,
                                             double fixed, int batch, double accuracy) {
    codeplan::ServiceProfile svc;
    svc.service_id = std::move(id);
    for (std::size_t i = 0; i < costs.size(); ++i) {
        svc.blocks.push_back({static_cast<int>(i), fixed, costs[i]});
    }
    svc.batch_size = batch;
    svc.base_accuracy = accuracy;
    return svc;
}

/// Local-only scenario with a free skip link.
inline codeplan::Scenario skip_scenario(std::vector<double> costs, int batch, int s,
                                        double fixed = 0.0, double accuracy = 0.9) {
    codeplan::Scenario sc;
    sc.local = make_service("local", std::move(costs), fixed, batch, accuracy);
    sc.skip_link = {0.0, 0.0, codeplan::LinkPlacement::on_local};
    sc.offload_count = s;
    return sc;
}

inline codeplan::Scenario cross_scenario(std::vector<double> local_costs,
                                         std::vector<double> host_costs, int b_l, int b_h,
                                         int s, double accuracy = 0.9) {
    codeplan::Scenario sc;
    sc.local = make_service("local", std::move(local_costs), 0.0, b_l, accuracy);
    sc.host = make_service("host", std::move(host_costs), 0.0, b_h, 0.7);
    sc.offload_count = s;
    return sc;
}

/// Randomized scenario for property tests. Always admits at least one
/// path: the skip link is free and every local middle block has a
/// strictly positive per-sample cost.
inline codeplan::Scenario random_scenario(std::mt19937& rng, int min_blocks = 3,
                                          int max_blocks = 4) {
    std::uniform_int_distribution<int> nblocks(min_blocks, max_blocks);
    std::uniform_real_distribution<double> cost(1e-4, 2e-3);
    std::uniform_real_distribution<double> fixed(0.0, 2e-4);
    std::uniform_int_distribution<int> batch(4, 32);

    codeplan::Scenario sc;
    const int n_l = nblocks(rng);
    std::vector<double> lc;
    for (int i = 0; i < n_l; ++i) {
        lc.push_back(cost(rng));
    }
    sc.local = make_service("local", lc, fixed(rng), batch(rng), 0.9);

    const int n_h = nblocks(rng);
    std::vector<double> hc;
    for (int i = 0; i < n_h; ++i) {
        hc.push_back(cost(rng) * 0.25);
    }
    sc.host = make_service("host", hc, fixed(rng) * 0.25, batch(rng), 0.7);

    std::uniform_int_distribution<int> offload(1, sc.local.batch_size);
    sc.offload_count = offload(rng);
    sc.entry_link = {fixed(rng) * 0.1, cost(rng) * 0.05, codeplan::LinkPlacement::on_host};
    sc.exit_link = {fixed(rng) * 0.1, cost(rng) * 0.05, codeplan::LinkPlacement::on_host};
    sc.skip_link = {0.0, 0.0, codeplan::LinkPlacement::on_local};
    return sc;
}

} // namespace testutil

#endif // CODEPLAN_TESTS_HELPERS_HPP
