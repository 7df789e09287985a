#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "nmf/classic_control.hpp"
#include "nmf/env_registry.hpp"
#include "nmf/errors.hpp"
#include "nmf/tabular_env.hpp"
#include "nmf/value_iteration.hpp"

using namespace nmf;

namespace {

// Independent cart-pole integrator, written from the textbook equations of motion.
struct PoleOracle {
    double x, v, th, w;
    void step(int action) {
        const double g = 9.8, mc = 1.0, mp = 0.1, l = 0.5, dt = 0.02;
        const double f = action == 1 ? 10.0 : -10.0;
        const double s = std::sin(th), c = std::cos(th);
        const double m = mc + mp;
        const double num = g * s + c * ((-f - mp * l * w * w * s) / m);
        const double den = l * (4.0 / 3.0 - mp * c * c / m);
        const double alpha = num / den;
        const double acc = (f + mp * l * (w * w * s - alpha * c)) / m;
        x = x + dt * v;
        v = v + dt * acc;
        th = th + dt * w;
        w = w + dt * alpha;
    }
};

struct PendulumOracle {
    double th, w;
    double step(double u) {
        const double pi = std::numbers::pi;
        double a = std::remainder(th, 2.0 * pi);
        if (a >= pi) a -= 2.0 * pi;
        const double cost = a * a + 0.1 * w * w + 0.001 * u * u;
        double nw = w + (15.0 * std::sin(th) + 3.0 * u) * 0.05;
        nw = nw > 8.0 ? 8.0 : (nw < -8.0 ? -8.0 : nw);
        th += nw * 0.05;
        w = nw;
        return -cost;
    }
};

// Best expected return over every deterministic time-dependent Markov policy,
// each evaluated by propagating the state distribution forward.
double brute_force_optimum(const FiniteMdp& m, int horizon) {
    const int n = m.num_states(), na = m.num_actions();
    const int slots = n * horizon;
    long long total = 1;
    for (int i = 0; i < slots; ++i) total *= na;
    double best = -1e300;
    for (long long code = 0; code < total; ++code) {
        std::vector<int> pi(slots);
        long long c = code;
        for (int i = 0; i < slots; ++i) {
            pi[i] = static_cast<int>(c % na);
            c /= na;
        }
        std::vector<double> dist = m.rho0();
        double ret = 0.0;
        for (int t = 0; t < horizon; ++t) {
            std::vector<double> next(n, 0.0);
            for (int s = 0; s < n; ++s) {
                if (dist[s] == 0.0) continue;
                for (const Outcome& o : m.outcomes(s, pi[t * n + s])) {
                    next[o.next] += dist[s] * o.prob;
                    ret += dist[s] * o.prob * o.reward;
                }
            }
            dist = next;
        }
        best = std::max(best, ret);
    }
    return best;
}

}  // namespace

TEST_CASE("chain transitions match the definition") {
    const FiniteMdp m = make_chain({5, 0.0});
    CHECK(m.num_states() == 5);
    CHECK(m.num_actions() == 2);
    CHECK(m.rho0()[0] == 1.0);
    CHECK(same_distribution(m.outcomes(0, kChainLeft), OutcomeList{{0, 0.0, 1.0}}));
    CHECK(same_distribution(m.outcomes(3, kChainRight), OutcomeList{{4, 1.0, 1.0}}));
    CHECK(same_distribution(m.outcomes(4, kChainRight), OutcomeList{{4, 1.0, 1.0}}));
    CHECK(m.embed(2) == StateVec{0, 0, 1, 0, 0});

    const FiniteMdp slip = make_chain({4, 0.25});
    CHECK(same_distribution(slip.outcomes(1, kChainRight), OutcomeList{{2, 0.0, 0.75}, {1, 0.0, 0.25}}));
    CHECK(same_distribution(slip.outcomes(2, kChainRight), OutcomeList{{3, 1.0, 0.75}, {2, 0.0, 0.25}}));
    CHECK_THROWS_AS(make_chain({1, 0.0}), ValidationError);
    CHECK_THROWS_AS(make_chain({5, 1.5}), ValidationError);
}

TEST_CASE("random MDPs are reproducible and non-degenerate") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const FiniteMdp a = make_random_mdp(seed, 4, 2, 2);
        const FiniteMdp b = make_random_mdp(seed, 4, 2, 2);
        CHECK(a.table() == b.table());
        CHECK(a.embedding() == b.embedding());
        CHECK_FALSE(is_degenerate(a));
        for (int s = 0; s < 4; ++s) {
            for (int act = 0; act < 2; ++act) {
                for (const Outcome& o : a.outcomes(s, act)) {
                    CHECK((o.reward == 0.0 || o.reward == 0.5 || o.reward == 1.0));
                }
            }
        }
    }
    CHECK(make_random_mdp(1, 4, 2, 2).table() != make_random_mdp(2, 4, 2, 2).table());
}

TEST_CASE("tabular sampling frequencies agree with the table") {
    const FiniteMdp m = make_random_mdp(3, 3, 2, 3);
    TabularEnvironment env(m);
    const int samples = 100000;
    std::map<std::pair<int, double>, int> counts;
    for (int i = 0; i < samples; ++i) {
        env.reset(static_cast<std::uint64_t>(i));
        const int s0 = env.current_state();
        if (s0 != 0) {
            // Only the (0, 1) row is tallied.
            continue;
        }
        const StepResult r = env.step(1);
        counts[{env.current_state(), r.reward}]++;
    }
    int n0 = 0;
    for (auto& kv : counts) n0 += kv.second;
    REQUIRE(n0 > 1000);
    CHECK(std::abs(n0 / double(samples) - m.rho0()[0]) < 4.0 * std::sqrt(m.rho0()[0] * (1 - m.rho0()[0]) / samples));
    for (const Outcome& o : m.outcomes(0, 1)) {
        const double p_hat = counts[{o.next, o.reward}] / double(n0);
        const double se = std::sqrt(o.prob * (1.0 - o.prob) / n0);
        CHECK(std::abs(p_hat - o.prob) <= 4.0 * se + 1e-12);
    }
}

TEST_CASE("environment protocol errors") {
    TabularEnvironment env(make_chain({3, 0.0}), 2);
    CHECK_THROWS_AS(env.step(0), EnvironmentError);
    env.reset(0);
    CHECK_THROWS_AS(env.step(2), EnvironmentError);
    CHECK_THROWS_AS(env.step(-1), EnvironmentError);
    CHECK_FALSE(env.step(1).done());
    const StepResult last = env.step(1);
    CHECK(last.truncated);
    CHECK_FALSE(last.terminated);
    CHECK_THROWS_AS(env.step(1), EnvironmentError);
    env.reset(1);
    CHECK_NOTHROW(env.step(0));
}

TEST_CASE("cart-pole matches an independent integrator") {
    CartPole env;
    for (std::uint64_t seed : {0ull, 7ull, 123ull}) {
        const StateVec o0 = env.reset(seed);
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(o0[i] >= -0.05);
            CHECK(o0[i] < 0.05);
        }
        PoleOracle ref{o0[0], o0[1], o0[2], o0[3]};
        int steps = 0;
        bool done = false;
        while (!done) {
            const int a = (steps / 3) % 2;
            const StepResult r = env.step(a);
            ref.step(a);
            CHECK(r.observation[0] == doctest::Approx(ref.x).epsilon(1e-9));
            CHECK(r.observation[1] == doctest::Approx(ref.v).epsilon(1e-9));
            CHECK(r.observation[2] == doctest::Approx(ref.th).epsilon(1e-9));
            CHECK(r.observation[3] == doctest::Approx(ref.w).epsilon(1e-9));
            CHECK(r.reward == 1.0);
            const bool out = std::abs(ref.x) > 2.4 || std::abs(ref.th) > 12.0 * std::numbers::pi / 180.0;
            CHECK(r.terminated == out);
            done = r.done();
            ++steps;
        }
        CHECK(steps <= 500);
    }
}

TEST_CASE("cart-pole always pushing one way terminates early and a balanced policy truncates") {
    CartPole env;
    env.reset(0);
    int steps = 0;
    while (!env.step(1).done()) ++steps;
    CHECK(steps < 100);

    env.reset(0);
    StateVec obs = env.reset(0);
    StepResult r;
    steps = 0;
    do {
        // Simple angle-and-rate controller.
        r = env.step(obs[2] + 0.5 * obs[3] > 0 ? 1 : 0);
        obs = r.observation;
        ++steps;
    } while (!r.done());
    CHECK(r.truncated);
    CHECK(steps == 500);
}

TEST_CASE("pendulum matches an independent integrator") {
    Pendulum env;
    for (std::uint64_t seed : {0ull, 5ull}) {
        const StateVec o0 = env.reset(seed);
        CHECK(o0[0] * o0[0] + o0[1] * o0[1] == doctest::Approx(1.0));
        PendulumOracle ref{std::atan2(o0[1], o0[0]), o0[2]};
        int steps = 0;
        bool done = false;
        while (!done) {
            const int a = steps % 3;
            const StepResult r = env.step(a);
            const double cost = ref.step(Pendulum::kTorques[a]);
            CHECK(r.reward == doctest::Approx(cost).epsilon(1e-9));
            CHECK(r.observation[0] == doctest::Approx(std::cos(ref.th)).epsilon(1e-9));
            CHECK(r.observation[1] == doctest::Approx(std::sin(ref.th)).epsilon(1e-9));
            CHECK(r.observation[2] == doctest::Approx(ref.w).epsilon(1e-9));
            CHECK(std::abs(r.observation[2]) <= 8.0);
            CHECK_FALSE(r.terminated);
            done = r.done();
            ++steps;
        }
        CHECK(steps == 200);
    }
}

TEST_CASE("resets with the same seed replay the same episode") {
    for (const char* id : {"cartpole", "pendulum", "chain:5:0.3", "random:4:3:2:2"}) {
        auto a = make_environment(id);
        auto b = make_environment(id);
        CHECK(a->reset(99) == b->reset(99));
        for (int i = 0; i < 20; ++i) {
            const StepResult ra = a->step(i % a->num_actions());
            const StepResult rb = b->step(i % b->num_actions());
            CHECK(ra.observation == rb.observation);
            CHECK(ra.reward == rb.reward);
            if (ra.done()) break;
        }
    }
}

TEST_CASE("value iteration equals the brute-force policy optimum") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const FiniteMdp m = make_random_mdp(seed, 3, 2, 2);
        for (int horizon : {1, 2, 3}) {
            const ValueIterationResult vi = value_iteration(m, horizon);
            CHECK(optimal_initial_value(m, vi) == doctest::Approx(brute_force_optimum(m, horizon)).epsilon(1e-12));
        }
    }
    const FiniteMdp chain = make_chain({5, 0.0});
    const ValueIterationResult vi = value_iteration(chain, 6);
    CHECK(optimal_initial_value(chain, vi) == 3.0);
    CHECK(vi.action(0, 0) == kChainRight);
    CHECK(vi.value(6, 2) == 0.0);
    // At the last step, both actions from state 0 earn nothing; ties go to action 0.
    CHECK(vi.action(5, 0) == kChainLeft);
}

TEST_CASE("registry parses ids and rejects malformed ones") {
    CHECK(make_environment("chain:7")->observation_dim() == 7);
    CHECK(make_environment("cartpole")->num_actions() == 2);
    CHECK(make_environment("pendulum")->num_actions() == 3);
    CHECK(make_environment("random:1:4:3:2")->num_actions() == 3);
    CHECK(make_environment("mdp-file:" NMF_TEST_DATA_DIR "/two_state.json")->observation_dim() == 1);
    CHECK(make_environment("random:18446744073709551615:3:2:2")->num_actions() == 2);
    CHECK_THROWS_AS(make_environment("random:-1:3:2:2"), ValidationError);
    CHECK(env_kind("cartpole") == EnvKind::cartpole);
    CHECK(env_kind("chain:5") == EnvKind::tabular);
    CHECK(finite_mdp_for("chain:3")->num_states() == 3);
    CHECK_FALSE(finite_mdp_for("pendulum").has_value());
    for (const char* bad : {"chain", "chain:x", "random:1:2", "mountaincar", "chain:5:0.2:9", ""}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(make_environment(bad), Error);
    }
}
