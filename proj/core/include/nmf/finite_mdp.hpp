#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nmf/distribution.hpp"
#include "nmf/history.hpp"
#include "nmf/state.hpp"

namespace nmf {

/// Time-homogeneous tabular decision process <rho0, S, A, T> with finite
/// reward support and an injective embedding of states into R^k.
///
/// Immutable once constructed; the constructor validates every invariant.
class FiniteMdp {
public:
    using Table = std::vector<std::vector<OutcomeList>>;  // [state][action]

    FiniteMdp(std::vector<double> rho0, Table outcomes, std::vector<StateVec> embedding);

    int num_states() const noexcept { return static_cast<int>(rho0_.size()); }
    int num_actions() const noexcept { return num_actions_; }
    std::size_t embedding_dim() const noexcept { return embedding_.front().dim(); }

    const std::vector<double>& rho0() const noexcept { return rho0_; }
    const OutcomeList& outcomes(int state, ActionId action) const;
    const Table& table() const noexcept { return outcomes_; }
    const StateVec& embed(int state) const;
    const std::vector<StateVec>& embedding() const noexcept { return embedding_; }

    /// Nearest embedded state, if it lies within tol (max-abs) of v.
    std::optional<int> decode_state(const StateVec& v, double tol = kVectorTolerance) const;

    /// Copy with one transition row replaced (validated).
    FiniteMdp with_outcomes(int state, ActionId action, OutcomeList outcomes) const;

    /// Sorted distinct rewards over all rows.
    std::vector<double> reward_support() const;

private:
    std::vector<double> rho0_;
    Table outcomes_;
    std::vector<StateVec> embedding_;
    int num_actions_ = 0;
};

/// True iff two distinct states have identical canonical rows for every action.
bool is_degenerate(const FiniteMdp& m);

/// FiniteMDP JSON file format.
nlohmann::json to_json(const FiniteMdp& m);
FiniteMdp finite_mdp_from_json(const nlohmann::json& j);
FiniteMdp parse_finite_mdp(const std::string& text);
FiniteMdp load_finite_mdp(const std::filesystem::path& path);

}  // namespace nmf
