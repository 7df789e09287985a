#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "nmf/agents.hpp"
#include "nmf/env_registry.hpp"
#include "nmf/errors.hpp"
#include "nmf/experiments.hpp"
#include "nmf/text.hpp"
#include "nmf/wrappers.hpp"

namespace nmf {

namespace {

struct Cell {
    std::string env;
    std::string wrapper;
    std::string agent;
    std::uint64_t seed;
};

auto sort_key(const SweepRow& r) { return std::tie(r.env, r.wrapper_family, r.param, r.agent, r.seed); }

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    std::replace(s.begin(), s.end(), '\r', ' ');
    return s;
}

SweepRow run_cell(const SweepConfig& cfg, const Cell& cell) {
    const FunctorSpec spec = FunctorSpec::parse(cell.wrapper);
    SweepRow row;
    row.env = cell.env;
    std::tie(row.wrapper_family, row.param) = wrapper_family(spec);
    row.agent = cell.agent;
    row.seed = cell.seed;
    row.episodes = cfg.eval_episodes;

    const auto start = std::chrono::steady_clock::now();
    try {
        auto env = wrap(make_environment(cell.env), spec);
        auto agent = make_agent(AgentSpec::parse(cell.agent), cell.env, spec, env->num_actions());
        train(*agent, *env, cfg.train_episodes, cfg.horizon, cell.seed);
        const EvalResult eval = evaluate(*agent, *env, cfg.eval_episodes, cfg.horizon, cell.seed);
        row.mean_return = eval.mean;
        row.std_return = eval.std;
    } catch (const std::exception& e) {
        row.mean_return = std::numeric_limits<double>::quiet_NaN();
        row.std_return = std::numeric_limits<double>::quiet_NaN();
        row.status = "error: " + one_line(e.what());
    }
    if (cfg.timing) {
        const auto elapsed = std::chrono::steady_clock::now() - start;
        row.wall_ms = std::chrono::duration<double, std::milli>(elapsed).count();
    }
    return row;
}

template <typename T>
std::vector<T> list_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw ValidationError(std::string("sweep config: missing \"") + key + "\"");
    return j.at(key).get<std::vector<T>>();
}

}  // namespace

void SweepConfig::validate() const {
    if (envs.empty()) throw ValidationError("sweep config: envs is empty");
    if (wrappers.empty()) throw ValidationError("sweep config: wrappers is empty");
    if (agents.empty()) throw ValidationError("sweep config: agents is empty");
    if (seeds.empty()) throw ValidationError("sweep config: seeds is empty");
    if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
        throw ValidationError("sweep config: seeds must be distinct");
    }
    if (train_episodes == 0) throw ValidationError("sweep config: train_episodes must be at least 1");
    if (eval_episodes == 0) throw ValidationError("sweep config: eval_episodes must be at least 1");
    if (horizon == 0) throw ValidationError("sweep config: horizon must be at least 1");

    for (const std::string& env : envs) (void)env_kind(env);
    std::set<std::pair<std::string, double>> families;
    for (const std::string& w : wrappers) {
        if (!families.insert(wrapper_family(FunctorSpec::parse(w))).second) {
            throw ValidationError("sweep config: wrapper \"" + w + "\" duplicates another grid cell");
        }
    }
    std::set<std::string> agent_names;
    for (const std::string& a : agents) {
        if (!agent_names.insert(AgentSpec::parse(a).to_string()).second) {
            throw ValidationError("sweep config: agent \"" + a + "\" is listed twice");
        }
    }
}

SweepConfig sweep_config_from_json(const nlohmann::json& j) {
    try {
        SweepConfig cfg;
        cfg.envs = list_field<std::string>(j, "envs");
        if (j.contains("wrappers") && j.at("wrappers").is_string()) {
            if (j.at("wrappers").get<std::string>() != "full-grid") {
                throw ValidationError("sweep config: wrappers must be a list or \"full-grid\"");
            }
            cfg.wrappers = full_grid_wrappers();
        } else {
            cfg.wrappers = list_field<std::string>(j, "wrappers");
        }
        cfg.agents = list_field<std::string>(j, "agents");
        if (j.contains("seeds")) cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        cfg.train_episodes = j.value("train_episodes", cfg.train_episodes);
        cfg.eval_episodes = j.value("eval_episodes", cfg.eval_episodes);
        cfg.horizon = j.value("horizon", cfg.horizon);
        cfg.output = j.value("output", cfg.output);
        cfg.workers = j.value("workers", cfg.workers);
        cfg.timing = j.value("timing", cfg.timing);
        cfg.validate();
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("sweep config: ") + e.what());
    }
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open sweep config " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    try {
        return sweep_config_from_json(j);
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

std::vector<std::string> full_grid_wrappers() {
    std::vector<std::string> out;
    for (int n = 0; n <= 5; ++n) out.push_back("S^" + std::to_string(n));
    for (int n = 0; n <= 5; ++n) out.push_back("D^" + std::to_string(n));
    for (int i = 0; i <= 5; ++i) out.push_back("S_l:" + format_shortest(i / 5.0));
    for (int i = 0; i <= 5; ++i) out.push_back("D_l:" + format_shortest(i / 5.0));
    return out;
}

std::pair<std::string, double> wrapper_family(const FunctorSpec& spec) {
    using Kind = FunctorStage::Kind;
    const auto& stages = spec.stages();
    if (stages.empty()) return {"id", 0.0};
    if (stages.size() == 1) {
        const FunctorStage& s = stages.front();
        switch (s.kind) {
            case Kind::identity: return {"id", 0.0};
            case Kind::sum_power: return {"S", s.power};
            case Kind::diff_power: return {"D", s.power};
            case Kind::sum_lambda: return {"S_l", s.lambda};
            case Kind::diff_lambda: return {"D_l", s.lambda};
            default: break;
        }
    }
    return {spec.to_string(), 0.0};
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    std::vector<Cell> cells;
    for (const auto& env : cfg.envs) {
        for (const auto& w : cfg.wrappers) {
            for (const auto& a : cfg.agents) {
                for (std::uint64_t seed : cfg.seeds) cells.push_back({env, w, a, seed});
            }
        }
    }

    std::vector<SweepRow> rows(cells.size());
    std::size_t workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, cells.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) rows[i] = run_cell(cfg, cells[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < cells.size(); i = next++) rows[i] = run_cell(cfg, cells[i]);
            });
        }
        for (auto& t : pool) t.join();
    }
    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) { return sort_key(a) < sort_key(b); });
    return rows;
}

}  // namespace nmf
