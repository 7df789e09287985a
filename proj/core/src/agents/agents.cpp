#include "nmf/agents.hpp"

#include <algorithm>
#include <cmath>

#include "nmf/errors.hpp"

namespace nmf {

namespace {

constexpr std::uint64_t kTrainStream = 0x747261696eULL;
constexpr std::uint64_t kEvalStream = 0x6576616cULL;

}  // namespace

double Agent::exploration(std::size_t, std::size_t) const { return 0.0; }

RandomAgent::RandomAgent(int num_actions) : num_actions_(num_actions) {
    if (num_actions_ < 1) throw ValidationError("agent needs at least one action");
}

ActionId RandomAgent::act(Rng& rng, double) {
    return static_cast<ActionId>(rng.index(static_cast<std::uint64_t>(num_actions_)));
}

Discretizer Discretizer::exact(std::size_t dim) {
    Discretizer d;
    d.dim_ = dim;
    return d;
}

Discretizer Discretizer::uniform(std::size_t bins, std::vector<double> lo, std::vector<double> hi) {
    if (bins == 0) throw ValidationError("bin count must be positive");
    if (lo.size() != hi.size() || lo.empty()) throw ValidationError("discretizer ranges must match in size");
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!(hi[i] > lo[i])) throw ValidationError("discretizer range " + std::to_string(i) + " is empty");
    }
    Discretizer d;
    d.dim_ = lo.size();
    d.bins_ = bins;
    d.lo_ = std::move(lo);
    d.hi_ = std::move(hi);
    return d;
}

void Discretizer::encode(const StateVec& obs, std::vector<double>& key) const {
    if (obs.dim() != dim_) throw ValidationError("observation dimension does not match the discretizer");
    for (std::size_t i = 0; i < dim_; ++i) {
        if (is_exact()) {
            key.push_back(obs[i] == 0.0 ? 0.0 : obs[i]);
            continue;
        }
        const double u = (obs[i] - lo_[i]) / (hi_[i] - lo_[i]);
        const double cell = std::floor(u * static_cast<double>(bins_));
        key.push_back(std::clamp(cell, 0.0, static_cast<double>(bins_ - 1)));
    }
}

WindowedQAgent::WindowedQAgent(QConfig config, Discretizer discretizer, int num_actions)
    : config_(config), discretizer_(std::move(discretizer)), num_actions_(num_actions) {
    if (config_.window < 1) throw ValidationError("window must be at least 1");
    if (num_actions_ < 1) throw ValidationError("agent needs at least one action");
    if (!(config_.decay_fraction > 0.0 && config_.decay_fraction <= 1.0)) {
        throw ValidationError("decay_fraction must lie in (0, 1]");
    }
}

WindowedQAgent::Key WindowedQAgent::make_key() const {
    Key key;
    key.reserve(config_.window * (discretizer_.dim() + 1));
    const std::size_t missing = config_.window - window_.size();
    for (std::size_t i = 0; i < missing; ++i) {
        key.push_back(0.0);
        key.insert(key.end(), discretizer_.dim(), 0.0);
    }
    for (const StateVec& obs : window_) {
        key.push_back(1.0);
        discretizer_.encode(obs, key);
    }
    return key;
}

void WindowedQAgent::begin_episode(const StateVec& observation) {
    window_.clear();
    window_.push_back(observation);
    key_ = make_key();
}

std::vector<double>& WindowedQAgent::row(const Key& key) {
    auto it = q_.find(key);
    if (it == q_.end()) it = q_.emplace(key, std::vector<double>(static_cast<std::size_t>(num_actions_), 0.0)).first;
    return it->second;
}

ActionId WindowedQAgent::greedy(const Key& key) const {
    const auto it = q_.find(key);
    if (it == q_.end()) return 0;
    ActionId best = 0;
    for (ActionId a = 1; a < num_actions_; ++a) {
        if (it->second[a] > it->second[best]) best = a;
    }
    return best;
}

ActionId WindowedQAgent::act(Rng& rng, double epsilon) {
    if (epsilon > 0.0 && rng.uniform() < epsilon) {
        return static_cast<ActionId>(rng.index(static_cast<std::uint64_t>(num_actions_)));
    }
    return greedy(key_);
}

void WindowedQAgent::observe(ActionId action, double reward, const StateVec& next, bool terminal, bool learn) {
    const Key previous = key_;
    window_.push_back(next);
    if (window_.size() > config_.window) window_.erase(window_.begin());
    key_ = make_key();
    if (!learn) return;

    double bootstrap = 0.0;
    if (!terminal) {
        const auto it = q_.find(key_);
        if (it != q_.end()) bootstrap = *std::max_element(it->second.begin(), it->second.end());
    }
    double& q = row(previous).at(static_cast<std::size_t>(action));
    q += config_.alpha * (reward + config_.gamma * bootstrap - q);
}

double WindowedQAgent::exploration(std::size_t episode, std::size_t total) const {
    const double span = config_.decay_fraction * static_cast<double>(total);
    const double progress = span > 0.0 ? std::min(1.0, static_cast<double>(episode) / span) : 1.0;
    return config_.epsilon_start + (config_.epsilon_end - config_.epsilon_start) * progress;
}

ValueIterationAgent::ValueIterationAgent(FiniteMdp mdp, int horizon)
    : mdp_(std::move(mdp)), vi_(value_iteration(mdp_, horizon)) {}

void ValueIterationAgent::begin_episode(const StateVec& observation) {
    t_ = 0;
    const std::optional<int> s = mdp_.decode_state(observation);
    if (!s) throw ValidationError("observation is not an embedded state");
    state_ = *s;
}

ActionId ValueIterationAgent::act(Rng&, double) {
    return vi_.action(std::min(t_, vi_.horizon - 1), state_);
}

void ValueIterationAgent::observe(ActionId, double, const StateVec& next, bool, bool) {
    ++t_;
    const std::optional<int> s = mdp_.decode_state(next);
    if (!s) throw ValidationError("observation is not an embedded state");
    state_ = *s;
}

void train(Agent& agent, Environment& env, std::size_t episodes, std::size_t horizon, std::uint64_t seed) {
    if (episodes == 0) throw ValidationError("training needs at least one episode");
    if (horizon == 0) throw ValidationError("horizon must be at least 1");
    Rng rng(mix_seed(seed, kTrainStream));
    for (std::size_t ep = 0; ep < episodes; ++ep) {
        const double epsilon = agent.exploration(ep, episodes);
        agent.begin_episode(env.reset(mix_seed(seed, ep)));
        for (std::size_t t = 0; t < horizon; ++t) {
            const ActionId a = agent.act(rng, epsilon);
            const StepResult r = env.step(a);
            agent.observe(a, r.reward, r.observation, r.terminated, true);
            if (r.done()) break;
        }
    }
}

EvalResult evaluate(Agent& agent, Environment& env, std::size_t episodes, std::size_t horizon, std::uint64_t seed) {
    if (episodes == 0) throw ValidationError("evaluation needs at least one episode");
    if (horizon == 0) throw ValidationError("horizon must be at least 1");
    Rng rng(mix_seed(seed, kEvalStream));
    EvalResult result;
    for (std::size_t ep = 0; ep < episodes; ++ep) {
        agent.begin_episode(env.reset(mix_seed(mix_seed(seed, kEvalStream), ep)));
        double total = 0.0;
        for (std::size_t t = 0; t < horizon; ++t) {
            const ActionId a = agent.act(rng, 0.0);
            const StepResult r = env.step(a);
            total += r.reward;
            agent.observe(a, r.reward, r.observation, r.terminated, false);
            if (r.done()) break;
        }
        result.returns.push_back(total);
    }
    double sum = 0.0;
    for (double x : result.returns) sum += x;
    result.mean = sum / static_cast<double>(episodes);
    double sq = 0.0;
    for (double x : result.returns) sq += (x - result.mean) * (x - result.mean);
    result.std = std::sqrt(sq / static_cast<double>(episodes));
    return result;
}

}  // namespace nmf
