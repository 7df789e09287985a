#include "nmf/classic_control.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nmf {

StateVec CartPole::reset(std::uint64_t seed) {
    rng_.seed(seed);
    for (double& x : state_) x = rng_.uniform(-0.05, 0.05);
    episode_.on_reset();
    return observe();
}

StepResult CartPole::step(ActionId action) {
    episode_.check_step(action, num_actions());
    auto& [x, x_dot, theta, theta_dot] = state_;
    constexpr double total_mass = kCartMass + kPoleMass;
    constexpr double pole_mass_length = kPoleMass * kHalfLength;

    const double force = action == 1 ? kForce : -kForce;
    const double cos_t = std::cos(theta);
    const double sin_t = std::sin(theta);
    const double temp = (force + pole_mass_length * theta_dot * theta_dot * sin_t) / total_mass;
    const double theta_acc = (kGravity * sin_t - cos_t * temp) /
                             (kHalfLength * (4.0 / 3.0 - kPoleMass * cos_t * cos_t / total_mass));
    const double x_acc = temp - pole_mass_length * theta_acc * cos_t / total_mass;

    x += kDt * x_dot;
    x_dot += kDt * x_acc;
    theta += kDt * theta_dot;
    theta_dot += kDt * theta_acc;

    StepResult result{observe(), 1.0, false, false};
    result.terminated = x < -kXLimit || x > kXLimit || theta < -kThetaLimit || theta > kThetaLimit;
    result.truncated = !result.terminated && episode_.steps() + 1 >= kMaxSteps;
    episode_.on_step(result.done());
    return result;
}

StateVec CartPole::observe() const { return StateVec{state_[0], state_[1], state_[2], state_[3]}; }

namespace {

double wrap_angle(double theta) {
    constexpr double pi = std::numbers::pi;
    return std::fmod(std::fmod(theta + pi, 2.0 * pi) + 2.0 * pi, 2.0 * pi) - pi;
}

}  // namespace

StateVec Pendulum::reset(std::uint64_t seed) {
    rng_.seed(seed);
    theta_ = rng_.uniform(-std::numbers::pi, std::numbers::pi);
    theta_dot_ = rng_.uniform(-1.0, 1.0);
    episode_.on_reset();
    return observe();
}

StepResult Pendulum::step(ActionId action) {
    episode_.check_step(action, num_actions());
    const double u = kTorques[static_cast<std::size_t>(action)];
    const double angle = wrap_angle(theta_);
    const double cost = angle * angle + 0.1 * theta_dot_ * theta_dot_ + 0.001 * u * u;

    double new_theta_dot = theta_dot_ + (3.0 * kGravity / (2.0 * kLength) * std::sin(theta_) +
                                         3.0 / (kMass * kLength * kLength) * u) * kDt;
    new_theta_dot = std::clamp(new_theta_dot, -kMaxSpeed, kMaxSpeed);
    theta_ += new_theta_dot * kDt;
    theta_dot_ = new_theta_dot;

    StepResult result{observe(), -cost, false, episode_.steps() + 1 >= kMaxSteps};
    episode_.on_step(result.done());
    return result;
}

StateVec Pendulum::observe() const { return StateVec{std::cos(theta_), std::sin(theta_), theta_dot_}; }

}  // namespace nmf
