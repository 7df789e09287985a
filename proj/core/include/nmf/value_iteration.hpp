#pragma once

#include <vector>

#include "nmf/finite_mdp.hpp"

namespace nmf {

/// Exact finite-horizon, undiscounted dynamic programming.
///
/// values[t][s] is the optimal expected return collected from time t to the
/// horizon when in state s (values[horizon][s] = 0). policy[t][s] is a greedy
/// action; ties go to the lowest action index.
struct ValueIterationResult {
    int horizon = 0;
    std::vector<std::vector<double>> values;
    std::vector<std::vector<ActionId>> policy;

    double value(int t, int state) const { return values.at(t).at(state); }
    ActionId action(int t, int state) const { return policy.at(t).at(state); }
};

ValueIterationResult value_iteration(const FiniteMdp& m, int horizon);

/// Optimal expected return from the initial distribution.
double optimal_initial_value(const FiniteMdp& m, const ValueIterationResult& vi);

}  // namespace nmf
