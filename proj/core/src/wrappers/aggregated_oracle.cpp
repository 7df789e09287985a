#include "nmf/wrappers.hpp"

#include "nmf/errors.hpp"

namespace nmf {

AggregatedOracle::AggregatedOracle(FiniteMdp mdp, FunctorSpec spec, std::optional<FunctorSpec> reward_spec)
    : mdp_(std::move(mdp)), spec_(std::move(spec)), reward_spec_(std::move(reward_spec)) {}

VecDistribution AggregatedOracle::initial() const {
    VecDistribution dist;
    for (int s = 0; s < mdp_.num_states(); ++s) {
        const double p = mdp_.rho0()[static_cast<std::size_t>(s)];
        if (p == 0.0) continue;
        auto agg = build_functor(spec_);
        dist.push_back({agg->begin(mdp_.embed(s)), 0.0, p});
    }
    return canonicalize(std::move(dist));
}

std::vector<StateVec> AggregatedOracle::decode_states(const std::vector<StateVec>& aggregates) const {
    auto decoder = build_decoder(spec_);
    return run(*decoder, aggregates);
}

VecDistribution AggregatedOracle::transition(const History& history, ActionId action) const {
    if (action < 0 || action >= mdp_.num_actions()) {
        throw ValidationError("action " + std::to_string(action) + " out of range");
    }
    const std::vector<StateVec> decoded = decode_states(history.states());
    const std::optional<int> last = mdp_.decode_state(decoded.back());
    if (!last) {
        throw UndecodableHistoryError("undecodable history: decoded state " + decoded.back().to_string() +
                                      " at t = " + std::to_string(history.time()) +
                                      " matches no embedded state within 1e-9");
    }

    auto agg = build_functor(spec_);
    agg->begin(decoded.front());
    for (std::size_t i = 1; i < decoded.size(); ++i) agg->push(decoded[i]);

    std::optional<RewardAggregator> reward_agg;
    if (reward_spec_) {
        reward_agg.emplace(*reward_spec_);
        for (double r : har_decode(*reward_spec_, history.rewards())) reward_agg->push(r);
    }

    VecDistribution dist;
    for (const Outcome& o : mdp_.outcomes(*last, action)) {
        auto next = agg->clone();
        double reward = o.reward;
        if (reward_agg) {
            RewardAggregator r = *reward_agg;
            reward = r.push(o.reward);
        }
        dist.push_back({next->push(mdp_.embed(o.next)), reward, o.prob});
    }
    return canonicalize(std::move(dist));
}

std::unique_ptr<NmdpOracle> as_nmdp_oracle(const FiniteMdp& mdp, const FunctorSpec& spec,
                                           const std::optional<FunctorSpec>& reward_spec) {
    return std::make_unique<AggregatedOracle>(mdp, spec, reward_spec);
}

}  // namespace nmf
