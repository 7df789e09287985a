#pragma once

#include <cstdint>

#include "nmf/environment.hpp"
#include "nmf/finite_mdp.hpp"
#include "nmf/rng.hpp"

namespace nmf {

/// Samples a FiniteMdp. Observations are the embedded state vectors.
/// max_steps = 0 means the environment never truncates on its own.
class TabularEnvironment final : public Environment {
public:
    explicit TabularEnvironment(FiniteMdp mdp, int max_steps = 0);

    StateVec reset(std::uint64_t seed) override;
    StepResult step(ActionId action) override;
    std::size_t observation_dim() const override { return mdp_.embedding_dim(); }
    int num_actions() const override { return mdp_.num_actions(); }

    const FiniteMdp& mdp() const noexcept { return mdp_; }
    int current_state() const noexcept { return state_; }

private:
    FiniteMdp mdp_;
    int max_steps_;
    Rng rng_;
    EpisodeState episode_;
    int state_ = 0;
};

struct ChainSpec {
    int length = 5;
    double slip = 0.0;
};

/// States 0..N-1, actions {0: left, 1: right}. Moving succeeds with
/// probability 1 - slip, otherwise the agent stays. Reward 1 whenever the next
/// state is N-1. Starts at state 0; one-hot embedding.
FiniteMdp make_chain(const ChainSpec& spec);

inline constexpr ActionId kChainLeft = 0;
inline constexpr ActionId kChainRight = 1;

/// Random tabular MDP: `branching` outcomes per (s, a) with Dirichlet(1)
/// probabilities, rewards from {0, 0.5, 1}, and a random injective embedding in
/// R^num_states. Redrawn until non-degenerate; throws ValidationError once the
/// retry budget is spent.
FiniteMdp make_random_mdp(std::uint64_t seed, int num_states, int num_actions, int branching,
                          int max_retries = 1000);

}  // namespace nmf
