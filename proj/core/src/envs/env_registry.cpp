#include "nmf/env_registry.hpp"

#include "nmf/classic_control.hpp"
#include "nmf/errors.hpp"
#include "nmf/tabular_env.hpp"
#include "nmf/text.hpp"

namespace nmf {

namespace {

int to_int(const std::string& text, std::string_view what) {
    const long long v = parse_integer(text, what);
    if (v < 0 || v > 1'000'000) throw ValidationError(std::string(what) + " out of range");
    return static_cast<int>(v);
}

}  // namespace

EnvKind env_kind(std::string_view id) {
    if (id == "cartpole") return EnvKind::cartpole;
    if (id == "pendulum") return EnvKind::pendulum;
    return EnvKind::tabular;
}

std::optional<FiniteMdp> finite_mdp_for(std::string_view id) {
    if (id == "cartpole" || id == "pendulum") return std::nullopt;
    try {
        if (id.starts_with("mdp-file:")) return load_finite_mdp(std::string(id.substr(9)));
        const std::vector<std::string> parts = split(id, ':');
        if (parts[0] == "chain" && (parts.size() == 2 || parts.size() == 3)) {
            ChainSpec spec{to_int(parts[1], "chain length"), 0.0};
            if (parts.size() == 3) spec.slip = parse_double(parts[2], "chain slip");
            return make_chain(spec);
        }
        if (parts[0] == "random" && parts.size() == 5) {
            const std::uint64_t seed = parse_unsigned(parts[1], "random seed");
            return make_random_mdp(seed, to_int(parts[2], "num_states"), to_int(parts[3], "num_actions"),
                                   to_int(parts[4], "branching"));
        }
    } catch (const ParseError& e) {
        throw ValidationError("invalid environment id \"" + std::string(id) + "\": " + e.what());
    }
    throw ValidationError("unknown environment id \"" + std::string(id) +
                          "\" (expected chain:N[:slip], random:seed:S:A:B, cartpole, pendulum, "
                          "mdp-file:PATH)");
}

std::unique_ptr<Environment> make_environment(std::string_view id) {
    switch (env_kind(id)) {
        case EnvKind::cartpole: return std::make_unique<CartPole>();
        case EnvKind::pendulum: return std::make_unique<Pendulum>();
        case EnvKind::tabular: break;
    }
    return std::make_unique<TabularEnvironment>(*finite_mdp_for(id));
}

}  // namespace nmf
