#include "nmf/value_iteration.hpp"

#include "nmf/errors.hpp"

namespace nmf {

ValueIterationResult value_iteration(const FiniteMdp& m, int horizon) {
    if (horizon < 1) throw ValidationError("value_iteration: horizon must be >= 1");
    const int n = m.num_states();
    ValueIterationResult result;
    result.horizon = horizon;
    result.values.assign(horizon + 1, std::vector<double>(n, 0.0));
    result.policy.assign(horizon, std::vector<ActionId>(n, 0));

    for (int t = horizon - 1; t >= 0; --t) {
        const auto& next_values = result.values[t + 1];
        for (int s = 0; s < n; ++s) {
            double best = 0.0;
            ActionId best_action = 0;
            for (ActionId a = 0; a < m.num_actions(); ++a) {
                double q = 0.0;
                for (const Outcome& o : m.outcomes(s, a)) q += o.prob * (o.reward + next_values[o.next]);
                // Strict improvement beyond rounding keeps ties on the lowest index.
                if (a == 0 || q > best + 1e-12) {
                    best = q;
                    best_action = a;
                }
            }
            result.values[t][s] = best;
            result.policy[t][s] = best_action;
        }
    }
    return result;
}

double optimal_initial_value(const FiniteMdp& m, const ValueIterationResult& vi) {
    double total = 0.0;
    for (int s = 0; s < m.num_states(); ++s) total += m.rho0()[s] * vi.value(0, s);
    return total;
}

}  // namespace nmf
