#pragma once

#include <array>
#include <cstdint>

#include "nmf/environment.hpp"
#include "nmf/rng.hpp"

namespace nmf {

/// Cart-pole with Euler integration. Observation (x, x_dot, theta, theta_dot),
/// actions {0: push left, 1: push right}, reward 1 per step, terminates when
/// |x| > 2.4 or |theta| > 12 degrees, truncates at 500 steps.
class CartPole final : public Environment {
public:
    static constexpr double kGravity = 9.8;
    static constexpr double kCartMass = 1.0;
    static constexpr double kPoleMass = 0.1;
    static constexpr double kHalfLength = 0.5;
    static constexpr double kForce = 10.0;
    static constexpr double kDt = 0.02;
    static constexpr double kXLimit = 2.4;
    static constexpr double kThetaLimit = 12.0 * 2.0 * 3.14159265358979323846 / 360.0;
    static constexpr int kMaxSteps = 500;

    StateVec reset(std::uint64_t seed) override;
    StepResult step(ActionId action) override;
    std::size_t observation_dim() const override { return 4; }
    int num_actions() const override { return 2; }

private:
    StateVec observe() const;

    std::array<double, 4> state_{};
    Rng rng_;
    EpisodeState episode_;
};

/// Pendulum with torques {-2, 0, +2}. Observation (cos theta, sin theta,
/// theta_dot); reward -(theta^2 + 0.1 theta_dot^2 + 0.001 u^2) with theta
/// wrapped to [-pi, pi); truncates at 200 steps and never terminates.
class Pendulum final : public Environment {
public:
    static constexpr double kGravity = 10.0;
    static constexpr double kMass = 1.0;
    static constexpr double kLength = 1.0;
    static constexpr double kDt = 0.05;
    static constexpr double kMaxSpeed = 8.0;
    static constexpr std::array<double, 3> kTorques{-2.0, 0.0, 2.0};
    static constexpr int kMaxSteps = 200;

    StateVec reset(std::uint64_t seed) override;
    StepResult step(ActionId action) override;
    std::size_t observation_dim() const override { return 3; }
    int num_actions() const override { return 3; }

private:
    StateVec observe() const;

    double theta_ = 0.0;
    double theta_dot_ = 0.0;
    Rng rng_;
    EpisodeState episode_;
};

}  // namespace nmf
