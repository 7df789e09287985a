#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "nmf/functor_spec.hpp"

namespace nmf {

struct SweepConfig {
    std::vector<std::string> envs;
    std::vector<std::string> wrappers;
    std::vector<std::string> agents;
    std::vector<std::uint64_t> seeds{0, 1, 2};
    std::size_t train_episodes = 200;
    std::size_t eval_episodes = 10;
    std::size_t horizon = 8;
    std::string output;
    std::size_t workers = 0;  // 0: hardware concurrency
    bool timing = false;      // wall_ms stays 0 unless set, keeping output byte-stable

    /// Throws ValidationError naming the offending field.
    void validate() const;
};

/// Accepts "wrappers": "full-grid" as shorthand for full_grid_wrappers().
SweepConfig sweep_config_from_json(const nlohmann::json& j);
SweepConfig load_sweep_config(const std::filesystem::path& path);

/// S^0..S^5, D^0..D^5, S_l and D_l over lambda = 0, 0.2, ..., 1.
std::vector<std::string> full_grid_wrappers();

/// ("S", n), ("D", n), ("S_l", lambda), ("D_l", lambda), ("id", 0); other
/// forms use their spec string as family with param 0.
std::pair<std::string, double> wrapper_family(const FunctorSpec& spec);

struct SweepRow {
    std::string env;
    std::string wrapper_family;
    double param = 0.0;
    std::string agent;
    std::uint64_t seed = 0;
    double mean_return = 0.0;
    double std_return = 0.0;
    std::size_t episodes = 0;
    std::string status = "ok";
    double wall_ms = 0.0;
};

inline constexpr std::string_view kCsvHeader =
    "env,wrapper_family,param,agent,seed,mean_return,std_return,episodes,status,wall_ms";

/// One row per grid cell, sorted by (env, wrapper_family, param, agent, seed).
/// A failing cell yields a row whose status starts with "error".
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

std::string to_csv(const std::vector<SweepRow>& rows);
/// Throws ParseError with the 1-based line number of the first bad line.
std::vector<SweepRow> parse_csv(std::string_view text);
std::vector<SweepRow> read_csv(const std::filesystem::path& path);

/// Self-contained SVG: one polyline per (env, agent, wrapper_family) series
/// over the param axis, y = seed-mean of mean_return with seed-std error bars.
/// Throws ValidationError when there are no usable rows.
std::string render_svg(const std::vector<SweepRow>& rows);
void render_plot(const std::filesystem::path& csv_path, const std::filesystem::path& svg_path);

}  // namespace nmf
