#include <algorithm>
#include <cmath>

#include "nmf/agents.hpp"
#include "nmf/env_registry.hpp"
#include "nmf/errors.hpp"
#include "nmf/text.hpp"

namespace nmf {

namespace {

constexpr std::size_t kDefaultBins = 8;

double stage_scale(const FunctorStage& stage) {
    using Kind = FunctorStage::Kind;
    switch (stage.kind) {
        case Kind::identity: return 1.0;
        case Kind::sum_power: return static_cast<double>(stage.power + 1);
        case Kind::diff_power: return std::ldexp(1.0, stage.power);
        case Kind::sum_lambda: return stage.lambda < 0.5 ? 1.0 / (1.0 - stage.lambda) : 2.0;
        case Kind::diff_lambda: return 1.0 + stage.lambda;
        case Kind::conv:
        case Kind::corr: {
            double total = 0.0;
            for (double w : stage.weights) total += std::abs(w);
            return std::max(total, 1.0);
        }
    }
    return 1.0;
}

}  // namespace

AgentSpec AgentSpec::parse(std::string_view text) {
    AgentSpec spec;
    if (text == "random") return spec;
    const std::vector<std::string> parts = split(text, ':');
    if (parts.empty() || parts[0] != "qwin" || parts.size() < 2 || parts.size() > 3) {
        throw ParseError("unknown agent \"" + std::string(text) + "\" (expected random or qwin:k[:bins])");
    }
    spec.kind = Kind::qwin;
    const long long k = parse_integer(parts[1], "agent window");
    if (k < 1) throw ValidationError("agent window must be at least 1");
    spec.window = static_cast<std::size_t>(k);
    if (parts.size() == 3) {
        const long long b = parse_integer(parts[2], "agent bins");
        if (b < 1) throw ValidationError("agent bins must be at least 1");
        spec.bins = static_cast<std::size_t>(b);
    }
    return spec;
}

std::string AgentSpec::to_string() const {
    if (kind == Kind::random) return "random";
    std::string out = "qwin:" + std::to_string(window);
    if (bins) out += ":" + std::to_string(*bins);
    return out;
}

double observation_scale(const FunctorSpec& spec) {
    double scale = 1.0;
    for (const FunctorStage& s : spec.stages()) scale *= stage_scale(s);
    return scale;
}

Discretizer make_discretizer(std::string_view env_id, const FunctorSpec& spec, std::optional<std::size_t> bins) {
    std::vector<double> bound;
    switch (env_kind(env_id)) {
        case EnvKind::cartpole: bound = {2.4, 3.0, 0.21, 3.5}; break;
        case EnvKind::pendulum: bound = {1.0, 1.0, 8.0}; break;
        case EnvKind::tabular: {
            const FiniteMdp m = *finite_mdp_for(env_id);
            if (!bins) return Discretizer::exact(m.embedding_dim());
            bound.assign(m.embedding_dim(), 0.0);
            for (const StateVec& v : m.embedding()) {
                for (std::size_t i = 0; i < v.dim(); ++i) bound[i] = std::max(bound[i], std::abs(v[i]));
            }
            for (double& b : bound) b = std::max(b, 1e-6);
            break;
        }
    }
    const double scale = observation_scale(spec);
    std::vector<double> lo;
    std::vector<double> hi;
    for (double b : bound) {
        lo.push_back(-b * scale);
        hi.push_back(b * scale);
    }
    return Discretizer::uniform(bins.value_or(kDefaultBins), std::move(lo), std::move(hi));
}

std::unique_ptr<Agent> make_agent(const AgentSpec& spec, std::string_view env_id, const FunctorSpec& wrapper,
                                  int num_actions, QConfig base) {
    if (spec.kind == AgentSpec::Kind::random) return std::make_unique<RandomAgent>(num_actions);
    base.window = spec.window;
    return std::make_unique<WindowedQAgent>(base, make_discretizer(env_id, wrapper, spec.bins), num_actions);
}

}  // namespace nmf
