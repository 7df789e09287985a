#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nmf/environment.hpp"
#include "nmf/finite_mdp.hpp"
#include "nmf/functor_spec.hpp"
#include "nmf/rng.hpp"
#include "nmf/value_iteration.hpp"

namespace nmf {

class Agent {
public:
    virtual ~Agent() = default;

    virtual void begin_episode(const StateVec& observation) = 0;
    /// epsilon = 0 is a greedy action.
    virtual ActionId act(Rng& rng, double epsilon) = 0;
    virtual void observe(ActionId action, double reward, const StateVec& next, bool terminal, bool learn) = 0;
    /// Exploration rate used during training episode `episode` of `total`.
    virtual double exploration(std::size_t episode, std::size_t total) const;
    virtual std::unique_ptr<Agent> clone() const = 0;
};

class RandomAgent final : public Agent {
public:
    explicit RandomAgent(int num_actions);

    void begin_episode(const StateVec&) override {}
    ActionId act(Rng& rng, double epsilon) override;
    void observe(ActionId, double, const StateVec&, bool, bool) override {}
    std::unique_ptr<Agent> clone() const override { return std::make_unique<RandomAgent>(*this); }

private:
    int num_actions_;
};

/// Maps an observation to discrete cell coordinates. Exact mode keeps the raw
/// values; binned mode uses `bins` uniform bins per dimension, clamped to range.
class Discretizer {
public:
    static Discretizer exact(std::size_t dim);
    static Discretizer uniform(std::size_t bins, std::vector<double> lo, std::vector<double> hi);

    std::size_t dim() const noexcept { return dim_; }
    bool is_exact() const noexcept { return bins_ == 0; }
    std::size_t bins() const noexcept { return bins_; }
    const std::vector<double>& lo() const noexcept { return lo_; }
    const std::vector<double>& hi() const noexcept { return hi_; }

    /// Appends the cell of `obs` to `key`.
    void encode(const StateVec& obs, std::vector<double>& key) const;

private:
    std::size_t dim_ = 0;
    std::size_t bins_ = 0;
    std::vector<double> lo_;
    std::vector<double> hi_;
};

struct QConfig {
    std::size_t window = 1;
    double alpha = 0.1;
    double gamma = 0.99;
    double epsilon_start = 1.0;
    double epsilon_end = 0.05;
    double decay_fraction = 0.8;
};

/// Tabular Q-learning over keys made of the last `window` discretized
/// observations. Each window slot carries a presence flag, so slots before
/// the episode's k-th step hold a reserved sentinel.
class WindowedQAgent final : public Agent {
public:
    using Key = std::vector<double>;

    WindowedQAgent(QConfig config, Discretizer discretizer, int num_actions);

    void begin_episode(const StateVec& observation) override;
    ActionId act(Rng& rng, double epsilon) override;
    void observe(ActionId action, double reward, const StateVec& next, bool terminal, bool learn) override;
    double exploration(std::size_t episode, std::size_t total) const override;
    std::unique_ptr<Agent> clone() const override { return std::make_unique<WindowedQAgent>(*this); }

    const QConfig& config() const noexcept { return config_; }
    const std::map<Key, std::vector<double>>& q_table() const noexcept { return q_; }
    const Key& current_key() const noexcept { return key_; }
    /// Lowest-index argmax; zeros for unseen keys.
    ActionId greedy(const Key& key) const;

private:
    Key make_key() const;
    std::vector<double>& row(const Key& key);

    QConfig config_;
    Discretizer discretizer_;
    int num_actions_;
    std::vector<StateVec> window_;  // most recent last
    Key key_;
    std::map<Key, std::vector<double>> q_;
};

/// Time-indexed optimal policy of a tabular MDP; observations must be embedded states.
class ValueIterationAgent final : public Agent {
public:
    ValueIterationAgent(FiniteMdp mdp, int horizon);

    void begin_episode(const StateVec& observation) override;
    ActionId act(Rng& rng, double epsilon) override;
    void observe(ActionId action, double reward, const StateVec& next, bool terminal, bool learn) override;
    std::unique_ptr<Agent> clone() const override { return std::make_unique<ValueIterationAgent>(*this); }

private:
    FiniteMdp mdp_;
    ValueIterationResult vi_;
    int t_ = 0;
    int state_ = 0;
};

struct EvalResult {
    double mean = 0.0;
    double std = 0.0;  // population standard deviation
    std::vector<double> returns;
};

/// Runs `episodes` learning episodes of at most `horizon` steps.
void train(Agent& agent, Environment& env, std::size_t episodes, std::size_t horizon, std::uint64_t seed);

/// Greedy rollouts without learning. Throws ValidationError for episodes = 0.
EvalResult evaluate(Agent& agent, Environment& env, std::size_t episodes, std::size_t horizon, std::uint64_t seed);

/// Parsed agent string: "random" or "qwin:k[:bins]".
struct AgentSpec {
    enum class Kind { random, qwin };
    Kind kind = Kind::random;
    std::size_t window = 1;
    std::optional<std::size_t> bins;

    static AgentSpec parse(std::string_view text);
    std::string to_string() const;
};

/// Range multiplier that aggregated observations need relative to raw ones.
double observation_scale(const FunctorSpec& spec);

/// Discretizer for an environment id seen through a wrapper. Tabular
/// environments pass through exactly unless bins are requested; classic
/// control uses 8 bins over fixed ranges scaled by observation_scale().
Discretizer make_discretizer(std::string_view env_id, const FunctorSpec& spec, std::optional<std::size_t> bins);

std::unique_ptr<Agent> make_agent(const AgentSpec& spec, std::string_view env_id, const FunctorSpec& wrapper,
                                  int num_actions, QConfig base = {});

}  // namespace nmf
