#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "nmf/environment.hpp"
#include "nmf/finite_mdp.hpp"

namespace nmf {

/// Builds an environment from its id:
///   "chain:N[:slip]", "random:seed:S:A:B", "cartpole", "pendulum", "mdp-file:PATH".
std::unique_ptr<Environment> make_environment(std::string_view id);

/// The tabular model behind a tabular env id, or nullopt for classic-control ids.
/// Throws ValidationError on malformed ids.
std::optional<FiniteMdp> finite_mdp_for(std::string_view id);

enum class EnvKind { tabular, cartpole, pendulum };

EnvKind env_kind(std::string_view id);

}  // namespace nmf
