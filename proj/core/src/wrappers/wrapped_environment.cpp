#include "nmf/wrappers.hpp"

#include "nmf/errors.hpp"

namespace nmf {

WrappedEnvironment::WrappedEnvironment(std::unique_ptr<Environment> inner, std::optional<FunctorSpec> state_spec,
                                       std::optional<FunctorSpec> reward_spec)
    : inner_(std::move(inner)) {
    if (!inner_) throw ValidationError("cannot wrap a null environment");
    state_agg_ = build_functor(state_spec.value_or(FunctorSpec::identity()));
    if (reward_spec) reward_agg_.emplace(*reward_spec);
}

StateVec WrappedEnvironment::reset(std::uint64_t seed) {
    const StateVec s0 = inner_->reset(seed);
    if (reward_agg_) reward_agg_->reset();
    return state_agg_->begin(s0);
}

StepResult WrappedEnvironment::step(ActionId action) {
    StepResult r = inner_->step(action);
    r.observation = state_agg_->push(r.observation);
    if (reward_agg_) r.reward = reward_agg_->push(r.reward);
    return r;
}

std::unique_ptr<Environment> wrap(std::unique_ptr<Environment> env, const FunctorSpec& spec,
                                  const std::optional<FunctorSpec>& reward_spec) {
    const auto& stages = spec.stages();
    if (stages.empty()) return std::make_unique<WrappedEnvironment>(std::move(env), std::nullopt, reward_spec);
    for (std::size_t i = 0; i < stages.size(); ++i) {
        env = std::make_unique<WrappedEnvironment>(std::move(env), FunctorSpec({stages[i]}),
                                                   i == 0 ? reward_spec : std::nullopt);
    }
    return env;
}

}  // namespace nmf
