#include "nmf/history.hpp"

#include "nmf/errors.hpp"

namespace nmf {

History::History(StateVec initial) { states_.push_back(std::move(initial)); }

History::History(std::vector<StateVec> states, std::vector<ActionId> actions, std::vector<double> rewards)
    : states_(std::move(states)), actions_(std::move(actions)), rewards_(std::move(rewards)) {
    if (states_.empty() || states_.size() != actions_.size() + 1 || actions_.size() != rewards_.size()) {
        throw ValidationError("history lengths must satisfy |states| = |actions| + 1 = |rewards| + 1");
    }
}

ActionId History::last_action() const {
    if (actions_.empty()) throw EmptyComponentError("history at t = 0 has no actions");
    return actions_.back();
}

double History::last_reward() const {
    if (rewards_.empty()) throw EmptyComponentError("history at t = 0 has no rewards");
    return rewards_.back();
}

void History::extend(ActionId action, double reward, StateVec next) {
    actions_.push_back(action);
    rewards_.push_back(reward);
    states_.push_back(std::move(next));
}

History History::extended(ActionId action, double reward, StateVec next) const {
    History copy = *this;
    copy.extend(action, reward, std::move(next));
    return copy;
}

History History::with_state(std::size_t index, StateVec replacement) const {
    if (index >= states_.size()) throw ValidationError("substitution index out of range");
    History copy = *this;
    copy.states_[index] = std::move(replacement);
    return copy;
}

bool History::is_proper_prefix_of(const History& other) const {
    if (time() >= other.time()) return false;
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (states_[i] != other.states_[i]) return false;
    }
    for (std::size_t i = 0; i < actions_.size(); ++i) {
        if (actions_[i] != other.actions_[i] || rewards_[i] != other.rewards_[i]) return false;
    }
    return true;
}

}  // namespace nmf
