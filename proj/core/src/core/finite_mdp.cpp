#include "nmf/finite_mdp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "nmf/errors.hpp"

namespace nmf {

namespace {

std::string cell_name(std::size_t s, std::size_t a) {
    return "outcomes[" + std::to_string(s) + "][" + std::to_string(a) + "]";
}

}  // namespace

FiniteMdp::FiniteMdp(std::vector<double> rho0, Table outcomes, std::vector<StateVec> embedding)
    : rho0_(std::move(rho0)), outcomes_(std::move(outcomes)), embedding_(std::move(embedding)) {
    const std::size_t n = rho0_.size();
    if (n == 0) throw ValidationError("num_states must be at least 1");
    if (outcomes_.size() != n) {
        throw ValidationError("outcomes: expected " + std::to_string(n) + " state rows, got " +
                              std::to_string(outcomes_.size()));
    }
    if (embedding_.size() != n) {
        throw ValidationError("embedding: expected " + std::to_string(n) + " vectors, got " +
                              std::to_string(embedding_.size()));
    }
    num_actions_ = static_cast<int>(outcomes_.front().size());
    if (num_actions_ == 0) throw ValidationError("num_actions must be at least 1");

    double rho_total = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
        if (!(rho0_[s] >= 0.0) || !std::isfinite(rho0_[s])) {
            throw ValidationError("rho0[" + std::to_string(s) + "] is not a probability");
        }
        rho_total += rho0_[s];
    }
    if (std::abs(rho_total - 1.0) > kProbTolerance) {
        throw ValidationError("rho0 sums to " + std::to_string(rho_total) + ", expected 1");
    }

    for (std::size_t s = 0; s < n; ++s) {
        if (outcomes_[s].size() != static_cast<std::size_t>(num_actions_)) {
            throw ValidationError("outcomes[" + std::to_string(s) + "]: expected " +
                                  std::to_string(num_actions_) + " action rows");
        }
        for (std::size_t a = 0; a < outcomes_[s].size(); ++a) {
            const OutcomeList& row = outcomes_[s][a];
            if (row.empty()) throw ValidationError(cell_name(s, a) + " is empty");
            double total = 0.0;
            for (const Outcome& o : row) {
                if (o.next < 0 || static_cast<std::size_t>(o.next) >= n) {
                    throw ValidationError(cell_name(s, a) + ": next state " + std::to_string(o.next) +
                                          " out of range");
                }
                if (!(o.prob >= 0.0) || !std::isfinite(o.prob)) {
                    throw ValidationError(cell_name(s, a) + ": negative or non-finite probability");
                }
                if (!std::isfinite(o.reward)) {
                    throw ValidationError(cell_name(s, a) + ": reward is not finite");
                }
                total += o.prob;
            }
            if (std::abs(total - 1.0) > kProbTolerance) {
                throw ValidationError(cell_name(s, a) + ": probabilities sum to " + std::to_string(total));
            }
        }
    }

    const std::size_t dim = embedding_.front().dim();
    if (dim == 0) throw ValidationError("embedding vectors must have dimension >= 1");
    for (std::size_t s = 0; s < n; ++s) {
        if (embedding_[s].dim() != dim) {
            throw ValidationError("embedding[" + std::to_string(s) + "] has inconsistent dimension");
        }
    }
    // Sweep over the first coordinate: only pairs within tolerance there can coincide.
    std::vector<std::size_t> order(n);
    for (std::size_t s = 0; s < n; ++s) order[s] = s;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return embedding_[a][0] < embedding_[b][0]; });
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const StateVec& u = embedding_[order[i]];
            const StateVec& v = embedding_[order[j]];
            if (v[0] - u[0] > kVectorTolerance) break;
            if (max_abs_diff(u, v) <= kVectorTolerance) {
                const std::size_t lo = std::min(order[i], order[j]);
                const std::size_t hi = std::max(order[i], order[j]);
                throw ValidationError("embedding is not injective: states " + std::to_string(lo) + " and " +
                                      std::to_string(hi) + " coincide");
            }
        }
    }
}

const OutcomeList& FiniteMdp::outcomes(int state, ActionId action) const {
    if (state < 0 || state >= num_states() || action < 0 || action >= num_actions_) {
        throw ValidationError("state/action out of range: (" + std::to_string(state) + ", " +
                              std::to_string(action) + ")");
    }
    return outcomes_[state][action];
}

const StateVec& FiniteMdp::embed(int state) const {
    if (state < 0 || state >= num_states()) {
        throw ValidationError("state " + std::to_string(state) + " out of range");
    }
    return embedding_[state];
}

std::optional<int> FiniteMdp::decode_state(const StateVec& v, double tol) const {
    if (v.dim() != embedding_dim()) return std::nullopt;
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int s = 0; s < num_states(); ++s) {
        const double d = max_abs_diff(v, embedding_[s]);
        if (d < best_dist) {
            best_dist = d;
            best = s;
        }
    }
    if (best_dist <= tol) return best;
    return std::nullopt;
}

FiniteMdp FiniteMdp::with_outcomes(int state, ActionId action, OutcomeList outcomes) const {
    (void)this->outcomes(state, action);
    Table table = outcomes_;
    table[state][action] = std::move(outcomes);
    return FiniteMdp(rho0_, std::move(table), embedding_);
}

std::vector<double> FiniteMdp::reward_support() const {
    std::vector<double> rewards;
    for (const auto& per_state : outcomes_) {
        for (const auto& row : per_state) {
            for (const Outcome& o : row) rewards.push_back(o.reward);
        }
    }
    std::sort(rewards.begin(), rewards.end());
    rewards.erase(std::unique(rewards.begin(), rewards.end()), rewards.end());
    return rewards;
}

bool is_degenerate(const FiniteMdp& m) {
    const int n = m.num_states();
    std::vector<std::vector<OutcomeList>> canonical(n);
    for (int s = 0; s < n; ++s) {
        for (int a = 0; a < m.num_actions(); ++a) canonical[s].push_back(canonicalize(m.outcomes(s, a)));
    }
    for (int s = 0; s < n; ++s) {
        for (int s2 = s + 1; s2 < n; ++s2) {
            bool identical = true;
            for (int a = 0; a < m.num_actions() && identical; ++a) {
                identical = same_distribution(canonical[s][a], canonical[s2][a]);
            }
            if (identical) return true;
        }
    }
    return false;
}

nlohmann::json to_json(const FiniteMdp& m) {
    nlohmann::json j;
    j["num_states"] = m.num_states();
    j["num_actions"] = m.num_actions();
    j["rho0"] = m.rho0();
    nlohmann::json table = nlohmann::json::array();
    for (int s = 0; s < m.num_states(); ++s) {
        nlohmann::json per_action = nlohmann::json::array();
        for (int a = 0; a < m.num_actions(); ++a) {
            nlohmann::json row = nlohmann::json::array();
            for (const Outcome& o : m.outcomes(s, a)) {
                row.push_back({{"next", o.next}, {"reward", o.reward}, {"prob", o.prob}});
            }
            per_action.push_back(std::move(row));
        }
        table.push_back(std::move(per_action));
    }
    j["outcomes"] = std::move(table);
    nlohmann::json emb = nlohmann::json::array();
    for (const StateVec& v : m.embedding()) emb.push_back(v.data());
    j["embedding"] = std::move(emb);
    return j;
}

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) {
        throw ValidationError(where + ": missing field \"" + key + "\"");
    }
    return j.at(key);
}

double number(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number()) throw ValidationError(where + ": expected a number");
    return j.get<double>();
}

int integer(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ValidationError(where + ": expected an integer");
    return j.get<int>();
}

const nlohmann::json& array(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array()) throw ValidationError(where + ": expected an array");
    return j;
}

}  // namespace

FiniteMdp finite_mdp_from_json(const nlohmann::json& j) {
    const int num_states = integer(field(j, "num_states", "mdp"), "num_states");
    const int num_actions = integer(field(j, "num_actions", "mdp"), "num_actions");
    if (num_states < 1) throw ValidationError("num_states: must be >= 1");
    if (num_actions < 1) throw ValidationError("num_actions: must be >= 1");

    const auto& rho_json = array(field(j, "rho0", "mdp"), "rho0");
    if (rho_json.size() != static_cast<std::size_t>(num_states)) {
        throw ValidationError("rho0: expected " + std::to_string(num_states) + " entries");
    }
    std::vector<double> rho0;
    for (std::size_t s = 0; s < rho_json.size(); ++s) {
        rho0.push_back(number(rho_json[s], "rho0[" + std::to_string(s) + "]"));
    }

    const auto& out_json = array(field(j, "outcomes", "mdp"), "outcomes");
    if (out_json.size() != static_cast<std::size_t>(num_states)) {
        throw ValidationError("outcomes: expected " + std::to_string(num_states) + " state rows");
    }
    FiniteMdp::Table table(num_states);
    for (std::size_t s = 0; s < out_json.size(); ++s) {
        const std::string ws = "outcomes[" + std::to_string(s) + "]";
        const auto& per_action = array(out_json[s], ws);
        if (per_action.size() != static_cast<std::size_t>(num_actions)) {
            throw ValidationError(ws + ": expected " + std::to_string(num_actions) + " action rows");
        }
        for (std::size_t a = 0; a < per_action.size(); ++a) {
            const std::string wa = cell_name(s, a);
            OutcomeList row;
            const auto& row_json = array(per_action[a], wa);
            for (std::size_t k = 0; k < row_json.size(); ++k) {
                const std::string wk = wa + "[" + std::to_string(k) + "]";
                row.push_back({integer(field(row_json[k], "next", wk), wk + ".next"),
                               number(field(row_json[k], "reward", wk), wk + ".reward"),
                               number(field(row_json[k], "prob", wk), wk + ".prob")});
            }
            table[s].push_back(std::move(row));
        }
    }

    const auto& emb_json = array(field(j, "embedding", "mdp"), "embedding");
    std::vector<StateVec> embedding;
    for (std::size_t s = 0; s < emb_json.size(); ++s) {
        const std::string ws = "embedding[" + std::to_string(s) + "]";
        std::vector<double> values;
        for (std::size_t d = 0; d < array(emb_json[s], ws).size(); ++d) {
            values.push_back(number(emb_json[s][d], ws + "[" + std::to_string(d) + "]"));
        }
        embedding.emplace_back(std::move(values));
    }
    return FiniteMdp(std::move(rho0), std::move(table), std::move(embedding));
}

FiniteMdp parse_finite_mdp(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed MDP JSON: ") + e.what());
    }
    return finite_mdp_from_json(j);
}

FiniteMdp load_finite_mdp(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open MDP file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_finite_mdp(buffer.str());
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

}  // namespace nmf
