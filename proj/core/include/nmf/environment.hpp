#pragma once

#include <cstdint>
#include <memory>

#include "nmf/history.hpp"
#include "nmf/state.hpp"

namespace nmf {

struct StepResult {
    StateVec observation;
    double reward = 0.0;
    bool terminated = false;
    bool truncated = false;

    bool done() const noexcept { return terminated || truncated; }
};

/// Episodic environment. reset(seed) fully determines the episode given the
/// action sequence. Stepping before reset or after the episode ended throws
/// EnvironmentError.
class Environment {
public:
    virtual ~Environment() = default;

    virtual StateVec reset(std::uint64_t seed) = 0;
    virtual StepResult step(ActionId action) = 0;
    virtual std::size_t observation_dim() const = 0;
    virtual int num_actions() const = 0;
};

/// Tracks the reset/step/done protocol shared by the built-in environments.
class EpisodeState {
public:
    void on_reset() noexcept {
        started_ = true;
        done_ = false;
        steps_ = 0;
    }
    void check_step(ActionId action, int num_actions) const;
    void on_step(bool done) noexcept {
        ++steps_;
        done_ = done;
    }
    int steps() const noexcept { return steps_; }

private:
    bool started_ = false;
    bool done_ = false;
    int steps_ = 0;
};

}  // namespace nmf
