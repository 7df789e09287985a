#include <doctest.h>

#include <cmath>
#include <map>

#include "nmf/batch_ops.hpp"
#include "nmf/env_registry.hpp"
#include "nmf/errors.hpp"
#include "nmf/rng.hpp"
#include "nmf/tabular_env.hpp"
#include "nmf/wrappers.hpp"

using namespace nmf;

namespace {

struct Rollout {
    std::vector<StateVec> observations;
    std::vector<double> rewards;
};

Rollout roll(Environment& env, std::uint64_t seed, int steps, std::uint64_t action_seed) {
    Rng rng(action_seed);
    Rollout out;
    out.observations.push_back(env.reset(seed));
    for (int i = 0; i < steps; ++i) {
        const StepResult r = env.step(static_cast<ActionId>(rng.index(static_cast<std::size_t>(env.num_actions()))));
        out.observations.push_back(r.observation);
        out.rewards.push_back(r.reward);
        if (r.done()) break;
    }
    return out;
}

std::unique_ptr<Environment> wrapped(const char* env, const char* spec, std::optional<FunctorSpec> har = std::nullopt) {
    return wrap(make_environment(env), FunctorSpec::parse(spec), har);
}

}  // namespace

TEST_CASE("identity wrappers reproduce the unwrapped stream exactly") {
    for (const char* env : {"chain:5:0.2", "cartpole", "pendulum"}) {
        auto base = make_environment(env);
        const Rollout want = roll(*base, 4, 60, 1);
        for (const char* spec : {"id", "S^0", "S_l:0", "D_l:0", "D^0"}) {
            CAPTURE(env);
            CAPTURE(spec);
            auto w = wrapped(env, spec);
            const Rollout got = roll(*w, 4, 60, 1);
            CHECK(got.observations == want.observations);
            CHECK(got.rewards == want.rewards);
        }
    }
}

TEST_CASE("state wrapping leaves rewards and the inner trajectory unchanged") {
    auto base = make_environment("chain:5:0.3");
    const Rollout want = roll(*base, 8, 40, 2);
    for (const char* spec : {"S^1", "S^3", "D^1", "S_l:0.5", "conv:1,-0.5,0.25"}) {
        CAPTURE(spec);
        auto w = wrapped("chain:5:0.3", spec);
        const Rollout got = roll(*w, 8, 40, 2);
        CHECK(got.rewards == want.rewards);
        CHECK(w->observation_dim() == base->observation_dim());
        // The aggregate stream is the aggregation of the inner stream.
        const std::vector<StateVec> expected = aggregate(FunctorSpec::parse(spec), want.observations);
        REQUIRE(expected.size() == got.observations.size());
        for (std::size_t t = 0; t < expected.size(); ++t) CHECK(max_abs_diff(expected[t], got.observations[t]) < 1e-12);
    }
}

TEST_CASE("S^1 observations group-decode to the unwrapped observations") {
    auto base = make_environment("cartpole");
    const Rollout want = roll(*base, 3, 100, 5);
    auto w = wrapped("cartpole", "S^1");
    const Rollout got = roll(*w, 3, 100, 5);
    const std::vector<StateVec> decoded = group_decode(got.observations);
    REQUIRE(decoded.size() == want.observations.size());
    for (std::size_t t = 0; t < decoded.size(); ++t) CHECK(max_abs_diff(decoded[t], want.observations[t]) < 1e-9);
}

TEST_CASE("reward wrapping leaves observations unchanged and aggregates rewards") {
    auto base = make_environment("pendulum");
    const Rollout want = roll(*base, 6, 50, 3);
    auto w = wrap(make_environment("pendulum"), FunctorSpec::identity(), FunctorSpec::sum_power(1));
    const Rollout got = roll(*w, 6, 50, 3);
    CHECK(got.observations == want.observations);
    double acc = 0.0;
    for (std::size_t t = 0; t < want.rewards.size(); ++t) {
        acc += want.rewards[t];
        CHECK(got.rewards[t] == doctest::Approx(acc).epsilon(1e-12));
    }
    // HAR and HAS together: each acts on its own stream.
    auto both = wrap(make_environment("pendulum"), FunctorSpec::sum_power(1), FunctorSpec::conv({1.0, -0.5}));
    const Rollout mixed = roll(*both, 6, 50, 3);
    CHECK(max_abs_diff(mixed.observations.back(), aggregate(FunctorSpec::sum_power(1), want.observations).back()) < 1e-9);
    CHECK(mixed.rewards[3] == doctest::Approx(want.rewards[3] - 0.5 * want.rewards[2]));
}

TEST_CASE("nested S^1 wrappers equal a single S^2 wrapper") {
    auto nested = wrap(wrap(make_environment("cartpole"), FunctorSpec::sum_power(1)), FunctorSpec::sum_power(1));
    auto chained = wrapped("cartpole", "S^1+S^1");
    auto single = wrapped("cartpole", "S^2");
    const Rollout a = roll(*nested, 9, 80, 4);
    const Rollout b = roll(*chained, 9, 80, 4);
    const Rollout c = roll(*single, 9, 80, 4);
    REQUIRE(a.observations.size() == c.observations.size());
    for (std::size_t t = 0; t < a.observations.size(); ++t) {
        CHECK(max_abs_diff(a.observations[t], c.observations[t]) < 1e-9);
        CHECK(max_abs_diff(b.observations[t], c.observations[t]) < 1e-9);
    }
}

TEST_CASE("wrapped environments keep the protocol and are deterministic") {
    auto w = wrapped("chain:4", "S^1");
    CHECK_THROWS_AS(w->step(0), EnvironmentError);
    const Rollout a = roll(*w, 17, 30, 8);
    const Rollout b = roll(*w, 17, 30, 8);
    CHECK(a.observations == b.observations);
    CHECK(a.rewards == b.rewards);
    CHECK_THROWS_AS(wrapped("chain:4", "S_l:3"), ValidationError);
}

TEST_CASE("identity oracle returns the table row of the last state") {
    const FiniteMdp m = make_random_mdp(2, 4, 2, 3);
    const AggregatedOracle oracle(m, FunctorSpec::identity());
    History h(m.embed(1));
    h.extend(0, 0.0, m.embed(3));
    for (ActionId a = 0; a < 2; ++a) {
        VecDistribution want;
        for (const Outcome& o : m.outcomes(3, a)) want.push_back({m.embed(o.next), o.reward, o.prob});
        CHECK(same_distribution(oracle.transition(h, a), want));
    }
    VecDistribution init;
    for (int s = 0; s < 4; ++s) init.push_back({m.embed(s), 0.0, m.rho0()[s]});
    CHECK(same_distribution(oracle.initial(), init));
}

TEST_CASE("chain-2 with S^1 concentrates on g1 plus the next embedding") {
    const FiniteMdp m = make_chain({2, 0.0});
    const AggregatedOracle oracle(m, FunctorSpec::sum_power(1));
    const StateVec g0 = m.embed(0);
    const StateVec g1 = g0 + m.embed(1);
    const History h({g0, g1}, {kChainRight}, {1.0});
    const VecDistribution right = oracle.transition(h, kChainRight);
    REQUIRE(right.size() == 1);
    CHECK(right[0].observation == g1 + m.embed(1));
    CHECK(right[0].reward == 1.0);
    CHECK(right[0].prob == 1.0);
    const VecDistribution left = oracle.transition(h, kChainLeft);
    REQUIRE(left.size() == 1);
    CHECK(left[0].observation == g1 + m.embed(0));
    CHECK(left[0].reward == 0.0);

    // Simulator rollouts hit the same point with frequency 1.
    auto env = wrap(std::make_unique<TabularEnvironment>(m), FunctorSpec::sum_power(1));
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        env->reset(seed);
        env->step(kChainRight);
        CHECK(env->step(kChainRight).observation == right[0].observation);
    }
}

TEST_CASE("off-manifold histories are undecodable") {
    const FiniteMdp m = make_chain({3, 0.0});
    const AggregatedOracle oracle(m, FunctorSpec::sum_power(1));
    const History bad({m.embed(0), m.embed(0) + StateVec{0.5, 0.5, 0.0}}, {1}, {0.0});
    CHECK_THROWS_WITH_AS(oracle.transition(bad, 0), doctest::Contains("undecodable history"), UndecodableHistoryError);
    const History ok({m.embed(0), m.embed(0) + m.embed(1)}, {1}, {0.0});
    CHECK_NOTHROW(oracle.transition(ok, 0));
    CHECK(oracle.decode_states(ok.states())[1] == m.embed(1));
}

TEST_CASE("simulator frequencies match the oracle within three standard errors") {
    const FiniteMdp m = make_chain({4, 0.3});
    const FunctorSpec spec = FunctorSpec::parse("S^1");
    const AggregatedOracle oracle(m, spec);
    auto env = wrap(std::make_unique<TabularEnvironment>(m), spec);

    // Fixed actions right, right; tally the second transition per first-step history.
    std::map<std::vector<double>, std::map<std::pair<std::vector<double>, double>, int>> tallies;
    std::map<std::vector<double>, History> histories;
    const int samples = 100000;
    for (int i = 0; i < samples; ++i) {
        const StateVec g0 = env->reset(static_cast<std::uint64_t>(i));
        const StepResult r1 = env->step(kChainRight);
        const StepResult r2 = env->step(kChainRight);
        const std::vector<double> key = r1.observation.data();
        histories.try_emplace(key, History({g0, r1.observation}, {kChainRight}, {r1.reward}));
        tallies[key][std::make_pair(r2.observation.data(), r2.reward)]++;
    }
    CHECK(histories.size() == 2);
    for (const auto& [key, counts] : tallies) {
        int n = 0;
        for (const auto& kv : counts) n += kv.second;
        const VecDistribution want = oracle.transition(histories.at(key), kChainRight);
        double covered = 0.0;
        for (const VecOutcome& o : want) {
            const auto it = counts.find(std::make_pair(o.observation.data(), o.reward));
            const double p_hat = it == counts.end() ? 0.0 : it->second / double(n);
            const double se = std::sqrt(o.prob * (1.0 - o.prob) / n);
            CHECK(std::abs(p_hat - o.prob) <= 3.0 * se + 1e-12);
            covered += p_hat;
        }
        CHECK(covered == doctest::Approx(1.0));
    }
}
