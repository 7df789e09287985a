#pragma once

#include <memory>
#include <optional>

#include "nmf/environment.hpp"
#include "nmf/finite_mdp.hpp"
#include "nmf/functor_spec.hpp"
#include "nmf/nmdp_oracle.hpp"
#include "nmf/reward_aggregator.hpp"

namespace nmf {

/// An environment whose observations (HAS) and/or rewards (HAR) are
/// aggregated histories of the inner environment's. The inner trajectory is
/// untouched; nothing is ever decoded while stepping.
class WrappedEnvironment final : public Environment {
public:
    WrappedEnvironment(std::unique_ptr<Environment> inner, std::optional<FunctorSpec> state_spec,
                       std::optional<FunctorSpec> reward_spec = std::nullopt);

    StateVec reset(std::uint64_t seed) override;
    StepResult step(ActionId action) override;
    std::size_t observation_dim() const override { return inner_->observation_dim(); }
    int num_actions() const override { return inner_->num_actions(); }

    const Environment& inner() const noexcept { return *inner_; }

private:
    std::unique_ptr<Environment> inner_;
    std::unique_ptr<Aggregator> state_agg_;
    std::optional<RewardAggregator> reward_agg_;
};

/// One wrapper layer per stage of `spec`, innermost first, so "S^1+S^1" is two
/// nested applications. The HAR (if any) sits on the innermost layer.
std::unique_ptr<Environment> wrap(std::unique_ptr<Environment> env, const FunctorSpec& spec,
                                  const std::optional<FunctorSpec>& reward_spec = std::nullopt);

/// Exact transition oracle of a tabular MDP wrapped by `spec`: histories hold
/// aggregated observations (and aggregated rewards when a HAR is given).
class AggregatedOracle final : public NmdpOracle {
public:
    AggregatedOracle(FiniteMdp mdp, FunctorSpec spec, std::optional<FunctorSpec> reward_spec = std::nullopt);

    /// Pushforward of rho0 through the first aggregation step.
    VecDistribution initial() const override;
    /// Throws UndecodableHistoryError when the decoded latest state is not an
    /// embedded state of the base MDP.
    VecDistribution transition(const History& history, ActionId action) const override;
    int num_actions() const override { return mdp_.num_actions(); }

    const FiniteMdp& mdp() const noexcept { return mdp_; }
    const FunctorSpec& spec() const noexcept { return spec_; }

    /// The base states s_0..s_t behind an aggregated observation list.
    std::vector<StateVec> decode_states(const std::vector<StateVec>& aggregates) const;

private:
    FiniteMdp mdp_;
    FunctorSpec spec_;
    std::optional<FunctorSpec> reward_spec_;
};

std::unique_ptr<NmdpOracle> as_nmdp_oracle(const FiniteMdp& mdp, const FunctorSpec& spec,
                                           const std::optional<FunctorSpec>& reward_spec = std::nullopt);

}  // namespace nmf
