#pragma once

#include <vector>

#include "nmf/state.hpp"

namespace nmf {

using ActionId = int;

/// (s_{0:t}, a_{0:t-1}, r_{0:t-1}): the object an NMDP conditions on.
class History {
public:
    explicit History(StateVec initial);
    History(std::vector<StateVec> states, std::vector<ActionId> actions, std::vector<double> rewards);

    /// t, the number of steps taken.
    std::size_t time() const noexcept { return actions_.size(); }

    // Extraction operators E_S, E_A, E_R.
    const std::vector<StateVec>& states() const noexcept { return states_; }
    const std::vector<ActionId>& actions() const noexcept { return actions_; }
    const std::vector<double>& rewards() const noexcept { return rewards_; }

    // Latest-element operators L_S, L_A, L_R. The last two need t >= 1.
    const StateVec& last_state() const { return states_.back(); }
    ActionId last_action() const;
    double last_reward() const;

    void extend(ActionId action, double reward, StateVec next);
    History extended(ActionId action, double reward, StateVec next) const;

    /// sigma_i(h, s): the same history with state i replaced.
    History with_state(std::size_t index, StateVec replacement) const;

    /// h < other: all three component lists are proper prefixes.
    bool is_proper_prefix_of(const History& other) const;

    friend bool operator==(const History&, const History&) = default;

private:
    std::vector<StateVec> states_;
    std::vector<ActionId> actions_;
    std::vector<double> rewards_;
};

}  // namespace nmf
