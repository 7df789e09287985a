#include "nmf/tabular_env.hpp"

#include <algorithm>
#include <cmath>

#include "nmf/errors.hpp"

namespace nmf {

namespace {

template <typename Probs>
std::size_t sample_index(Rng& rng, const Probs& probs, auto prob_of) {
    const double u = rng.uniform();
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double p = prob_of(probs[i]);
        if (p <= 0.0) continue;
        last_positive = i;
        cumulative += p;
        if (u < cumulative) return i;
    }
    return last_positive;  // rounding slack in the cumulative sum
}

}  // namespace

TabularEnvironment::TabularEnvironment(FiniteMdp mdp, int max_steps)
    : mdp_(std::move(mdp)), max_steps_(max_steps) {
    if (max_steps_ < 0) throw ValidationError("max_steps must be non-negative");
}

StateVec TabularEnvironment::reset(std::uint64_t seed) {
    rng_.seed(seed);
    episode_.on_reset();
    state_ = static_cast<int>(sample_index(rng_, mdp_.rho0(), [](double p) { return p; }));
    return mdp_.embed(state_);
}

StepResult TabularEnvironment::step(ActionId action) {
    episode_.check_step(action, mdp_.num_actions());
    const OutcomeList& row = mdp_.outcomes(state_, action);
    const Outcome& o = row[sample_index(rng_, row, [](const Outcome& x) { return x.prob; })];
    state_ = o.next;
    StepResult result{mdp_.embed(state_), o.reward, false, false};
    result.truncated = max_steps_ > 0 && episode_.steps() + 1 >= max_steps_;
    episode_.on_step(result.done());
    return result;
}

FiniteMdp make_chain(const ChainSpec& spec) {
    if (spec.length < 2) throw ValidationError("chain length must be >= 2");
    if (!(spec.slip >= 0.0 && spec.slip < 0.5)) throw ValidationError("chain slip must lie in [0, 0.5)");
    const int n = spec.length;
    std::vector<double> rho0(n, 0.0);
    rho0[0] = 1.0;
    FiniteMdp::Table table(n);
    std::vector<StateVec> embedding;
    for (int s = 0; s < n; ++s) {
        for (int direction : {-1, +1}) {
            const int moved = std::clamp(s + direction, 0, n - 1);
            auto reward_for = [n](int next) { return next == n - 1 ? 1.0 : 0.0; };
            OutcomeList row{{moved, reward_for(moved), 1.0 - spec.slip}};
            if (spec.slip > 0.0) row.push_back({s, reward_for(s), spec.slip});
            table[s].push_back(canonicalize(std::move(row)));
        }
        StateVec e(static_cast<std::size_t>(n), 0.0);
        e[s] = 1.0;
        embedding.push_back(std::move(e));
    }
    return FiniteMdp(std::move(rho0), std::move(table), std::move(embedding));
}

FiniteMdp make_random_mdp(std::uint64_t seed, int num_states, int num_actions, int branching, int max_retries) {
    if (num_states < 1 || num_actions < 1) throw ValidationError("random MDP sizes must be >= 1");
    if (branching < 1) throw ValidationError("random MDP branching must be >= 1");
    static constexpr double kRewards[] = {0.0, 0.5, 1.0};
    Rng rng(seed);
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        std::vector<double> rho0(num_states);
        double total = 0.0;
        for (double& p : rho0) total += (p = rng.exponential());
        for (double& p : rho0) p /= total;

        FiniteMdp::Table table(num_states);
        for (int s = 0; s < num_states; ++s) {
            for (int a = 0; a < num_actions; ++a) {
                OutcomeList row;
                double weight_total = 0.0;
                for (int k = 0; k < branching; ++k) {
                    const double w = rng.exponential();
                    weight_total += w;
                    row.push_back({static_cast<int>(rng.index(num_states)), kRewards[rng.index(3)], w});
                }
                for (Outcome& o : row) o.prob /= weight_total;
                table[s].push_back(std::move(row));
            }
        }

        std::vector<StateVec> embedding;
        for (int s = 0; s < num_states; ++s) {
            StateVec v(static_cast<std::size_t>(num_states), 0.0);
            for (std::size_t d = 0; d < v.dim(); ++d) v[d] = rng.uniform(-1.0, 1.0);
            embedding.push_back(std::move(v));
        }
        bool separated = true;
        for (int s = 0; s < num_states && separated; ++s) {
            for (int s2 = 0; s2 < s && separated; ++s2) {
                separated = max_abs_diff(embedding[s], embedding[s2]) > 1e-6;
            }
        }
        if (!separated) continue;

        FiniteMdp m(std::move(rho0), std::move(table), std::move(embedding));
        if (!is_degenerate(m)) return m;
    }
    throw ValidationError("make_random_mdp: no non-degenerate MDP within " + std::to_string(max_retries) +
                          " attempts");
}

}  // namespace nmf
