#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nmf/agents.hpp"
#include "nmf/analysis.hpp"
#include "nmf/env_registry.hpp"
#include "nmf/errors.hpp"
#include "nmf/experiments.hpp"
#include "nmf/reversibility.hpp"
#include "nmf/tabular_env.hpp"
#include "nmf/text.hpp"
#include "nmf/wrappers.hpp"

namespace nmf::cli {

namespace {

struct Common {
    std::uint64_t seed = 0;
    std::string out;
    bool json = false;
};

void add_common(CLI::App* cmd, Common& c, const std::string& out_help) {
    cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
    cmd->add_option("--out", c.out, out_help);
    cmd->add_flag("--json", c.json, "Print the machine-readable report on stdout");
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot write " + path);
    f << content;
    if (!f) throw ValidationError("failed writing " + path);
}

FiniteMdp tabular_model(const std::string& env_id) {
    std::optional<FiniteMdp> m = finite_mdp_for(env_id);
    if (!m) throw ValidationError("environment \"" + env_id + "\" is not tabular");
    return *m;
}

void print_violations(std::ostream& out, const CheckReport& r, std::size_t limit = 10) {
    for (std::size_t i = 0; i < r.violations.size() && i < limit; ++i) {
        const Violation& v = r.violations[i];
        out << "  violation: " << v.where << ": expected " << format_significant(v.expected, 12) << ", got "
            << format_significant(v.got, 12) << "\n";
    }
    if (r.violations.size() > limit) out << "  ... " << r.violations.size() - limit << " more\n";
}

// Emits a report: JSON on stdout when asked, the JSON report to --out when given.
void emit_report(const Common& c, std::ostream& out, const nlohmann::json& j, const std::string& text) {
    if (c.json) {
        out << j.dump(2) << "\n";
    } else {
        out << text;
    }
    if (!c.out.empty()) write_file(c.out, j.dump(2) + "\n");
}

int cmd_verify_reversibility(const Common& c, std::size_t trajectories, std::size_t kernels, std::ostream& out) {
    const ReversibilityReport report = run_reversibility_suite(c.seed, trajectories, kernels);
    std::ostringstream text;
    text << "reversibility: " << report.cases.size() << " specs x " << trajectories << " trajectories, max error "
         << format_significant(report.max_error) << " (tolerance " << format_significant(report.tolerance)
         << "): " << (report.pass() ? "PASS" : "FAIL") << "\n";
    for (const ReversibilityCase& rc : report.cases) {
        if (rc.max_error > report.tolerance) text << "  " << rc.spec << ": " << format_significant(rc.max_error) << "\n";
    }
    emit_report(c, out, report.to_json(), text.str());
    return report.pass() ? 0 : 1;
}

int cmd_verify_category(const Common& c, std::vector<std::string> envs, std::size_t random_mdps, std::size_t horizon,
                        bool inject, std::ostream& out) {
    std::vector<std::pair<std::string, FiniteMdp>> models;
    if (envs.empty() && random_mdps == 0) envs.push_back("chain:5");
    for (const std::string& id : envs) models.emplace_back(id, tabular_model(id));
    for (std::size_t i = 0; i < random_mdps; ++i) {
        const std::uint64_t seed = mix_seed(c.seed, i);
        const int states = 2 + static_cast<int>(seed % 3);
        const int actions = 1 + static_cast<int>((seed >> 8) % 2);
        const std::string id = "random:" + std::to_string(seed) + ":" + std::to_string(states) + ":" +
                               std::to_string(actions) + ":2";
        models.emplace_back(id, tabular_model(id));
    }

    bool all_pass = true;
    std::ostringstream text;
    nlohmann::json results = nlohmann::json::array();
    for (const auto& [id, m] : models) {
        CheckReport report;
        if (inject) {
            const NonMarkovEmbedding embedded(m);
            HistoryMdp abstraction = build_markov_abstraction(embedded, horizon);
            const auto [state, action] = inject_fault(abstraction, m, c.seed);
            report = check_equivalence(m, abstraction);
            text << id << ": fault injected at history " << state << ", action " << action << "\n";
        } else {
            report = verify_equivalence_roundtrip(m, horizon);
        }
        all_pass = all_pass && report.pass;
        text << id << ": " << (report.pass ? "PASS" : "FAIL") << " (" << report.cells_checked
             << " cells, max discrepancy " << format_significant(report.max_discrepancy) << ")\n";
        print_violations(text, report);
        nlohmann::json j = report.to_json();
        j["env"] = id;
        j["horizon"] = horizon;
        results.push_back(j);
    }
    emit_report(c, out, {{"pass", all_pass}, {"results", results}}, text.str());
    return all_pass ? 0 : 1;
}

int cmd_verify_morphism(const Common& c, const std::string& source, const std::string& target,
                        const std::string& map_arg, std::ostream& out) {
    const FiniteMdp m = tabular_model(source);
    const FiniteMdp m2 = tabular_model(target);
    MorphismMaps phi;
    if (map_arg == "identity") {
        phi = MorphismMaps::identity(m);
    } else {
        std::ifstream f(map_arg);
        if (!f) throw ValidationError("cannot open map file " + map_arg);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(f);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(map_arg + ": " + e.what());
        }
        phi = parse_morphism_maps(j);
    }
    const CheckReport report = verify_morphism(m, m2, phi);
    std::ostringstream text;
    text << "morphism " << source << " -> " << target << ": " << (report.pass ? "PASS" : "FAIL") << " ("
         << report.cells_checked << " cells)\n";
    print_violations(text, report);
    emit_report(c, out, report.to_json(), text.str());
    return report.pass ? 0 : 1;
}

int cmd_analyze_deps(const Common& c, const std::string& env, const std::string& wrapper, std::size_t t,
                     std::ostream& out, std::ostream& err) {
    const FiniteMdp m = tabular_model(env);
    if (is_degenerate(m)) err << "warning: " << env << " is degenerate; dependency predictions need not hold\n";
    const FunctorSpec spec = FunctorSpec::parse(wrapper);
    const DependencyStructure predicted = analytical_dependency(spec, t);
    const AggregatedOracle oracle(m, spec);

    std::size_t histories = 0;
    std::size_t undecodable = 0;
    std::size_t substitutions = 0;
    bool match = true;
    std::set<std::vector<std::size_t>> observed;
    for (const History& h : reachable_histories(oracle, t)) {
        if (h.time() != t) continue;
        const DependencyStructure d = empirical_dependency(oracle, h);
        ++histories;
        undecodable += d.undecodable;
        substitutions += d.substitutions;
        observed.insert(d.indices);
        match = match && d.indices == predicted.indices;
    }

    nlohmann::json j = predicted.to_json();
    j.erase("substitutions");
    j.erase("undecodable");
    j["env"] = env;
    j["wrapper"] = spec.to_string();
    j["match"] = match;
    j["histories"] = histories;
    j["empirical"] = observed;
    j["substitutions"] = substitutions;
    j["undecodable_substitutions"] = undecodable;
    out << j.dump(c.json ? 2 : -1) << "\n";
    if (!c.out.empty()) write_file(c.out, j.dump(2) + "\n");
    return match ? 0 : 1;
}

int cmd_run(const Common& c, const std::string& env_id, const std::string& wrapper, const std::string& har,
            const std::string& agent_text, std::size_t train_episodes, std::size_t eval_episodes, std::size_t horizon,
            std::ostream& out) {
    const FunctorSpec spec = FunctorSpec::parse(wrapper);
    std::optional<FunctorSpec> reward_spec;
    if (!har.empty()) reward_spec = FunctorSpec::parse(har);
    auto env = wrap(make_environment(env_id), spec, reward_spec);
    auto agent = make_agent(AgentSpec::parse(agent_text), env_id, spec, env->num_actions());

    if (train_episodes == 0) {
        Rng rng(mix_seed(c.seed, 1));
        std::ostringstream text;
        nlohmann::json steps = nlohmann::json::array();
        StateVec obs = env->reset(c.seed);
        agent->begin_episode(obs);
        text << "t=0 obs=" << obs.to_string() << "\n";
        double total = 0.0;
        for (std::size_t t = 0; t < horizon; ++t) {
            const ActionId a = agent->act(rng, 0.0);
            const StepResult r = env->step(a);
            agent->observe(a, r.reward, r.observation, r.terminated, false);
            total += r.reward;
            text << "t=" << t + 1 << " action=" << a << " reward=" << format_significant(r.reward)
                 << " obs=" << r.observation.to_string() << (r.terminated ? " terminated" : "")
                 << (r.truncated ? " truncated" : "") << "\n";
            steps.push_back({{"action", a},
                             {"reward", r.reward},
                             {"observation", std::vector<double>(r.observation.values().begin(),
                                                                 r.observation.values().end())},
                             {"terminated", r.terminated},
                             {"truncated", r.truncated}});
            if (r.done()) break;
        }
        text << "return=" << format_significant(total) << "\n";
        const nlohmann::json j{{"env", env_id}, {"wrapper", spec.to_string()}, {"seed", c.seed},
                               {"return", total}, {"steps", steps}};
        if (c.json) {
            out << j.dump(2) << "\n";
        } else {
            out << text.str();
        }
        if (!c.out.empty()) write_file(c.out, j.dump(2) + "\n");
        return 0;
    }

    train(*agent, *env, train_episodes, horizon, c.seed);
    const EvalResult eval = evaluate(*agent, *env, eval_episodes, horizon, c.seed);
    SweepRow row;
    row.env = env_id;
    std::tie(row.wrapper_family, row.param) = wrapper_family(spec);
    row.agent = AgentSpec::parse(agent_text).to_string();
    row.seed = c.seed;
    row.mean_return = eval.mean;
    row.std_return = eval.std;
    row.episodes = eval_episodes;
    const std::string csv = to_csv({row});
    out << csv;
    if (!c.out.empty()) write_file(c.out, csv);
    return 0;
}

int cmd_sweep(const Common& c, const std::string& config_path, std::optional<std::size_t> workers,
              std::ostream& out) {
    SweepConfig cfg = load_sweep_config(config_path);
    if (const char* env_workers = std::getenv("NMF_WORKERS"); env_workers && *env_workers) {
        const long long n = parse_integer(env_workers, "NMF_WORKERS");
        if (n < 1) throw ValidationError("NMF_WORKERS must be at least 1");
        cfg.workers = static_cast<std::size_t>(n);
    }
    if (workers) cfg.workers = *workers;
    const std::vector<SweepRow> rows = run_sweep(cfg);
    const std::string csv = to_csv(rows);
    const std::string path = !c.out.empty() ? c.out : cfg.output;
    std::size_t failed = 0;
    for (const SweepRow& r : rows) failed += r.status != "ok";
    if (path.empty()) {
        out << csv;
    } else {
        write_file(path, csv);
        out << "wrote " << rows.size() << " rows to " << path << "\n";
    }
    if (failed) out << failed << " cell(s) failed; see the status column\n";
    return 0;
}

int cmd_plot(const Common& c, const std::string& in, std::ostream& out) {
    std::string path = c.out;
    if (path.empty()) path = std::filesystem::path(in).replace_extension(".svg").string();
    render_plot(in, path);
    out << "wrote " << path << "\n";
    return 0;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Non-Markovian decision processes built from Markovian ones by reversible history aggregation"};
    app.name("nmf");
    app.require_subcommand(1);

    Common common;

    auto* rev = app.add_subcommand("verify-reversibility", "Decode-after-aggregate property suite");
    std::size_t trajectories = 1000;
    std::size_t kernels = 50;
    rev->add_option("--trajectories", trajectories, "Random trajectories per spec")->capture_default_str();
    rev->add_option("--kernels", kernels, "Random band kernels in the suite")->capture_default_str();
    add_common(rev, common, "Write the JSON report here");

    auto* cat = app.add_subcommand("verify-category", "Round-trip M(N(m)) against m on finite MDPs");
    std::vector<std::string> cat_envs;
    std::size_t random_mdps = 0;
    std::size_t horizon = 3;
    bool inject = false;
    cat->add_option("--env", cat_envs, "Tabular environment id (repeatable; default chain:5)");
    cat->add_option("--random-mdps", random_mdps, "Also check this many seeded random MDPs")->capture_default_str();
    cat->add_option("--horizon", horizon, "Abstraction horizon")->capture_default_str();
    cat->add_flag("--inject-fault", inject, "Perturb one abstraction cell by 1e-6 before checking");
    add_common(cat, common, "Write the JSON report here");

    auto* morph = app.add_subcommand("verify-morphism", "Check an MDP morphism given as JSON maps");
    std::string source;
    std::string target;
    std::string map_path;
    morph->add_option("--source", source, "Source tabular environment id")->required();
    morph->add_option("--target", target, "Target tabular environment id")->required();
    morph->add_option("--map", map_path,
                      "JSON file {\"phi_S\": [...], \"phi_A\": [...], \"phi_R\": [[r, r'], ...]} or \"identity\"")
        ->required();
    add_common(morph, common, "Write the JSON report here");

    auto* deps = app.add_subcommand("analyze-deps", "Empirical vs analytical state dependency structure");
    std::string deps_env;
    std::string deps_wrapper;
    std::size_t deps_t = 0;
    deps->add_option("--env", deps_env, "Tabular environment id")->required();
    deps->add_option("--wrapper", deps_wrapper, "Wrapper spec, e.g. S^2, D^1, conv:1,-0.5")->required();
    deps->add_option("--t", deps_t, "History time step")->required();
    add_common(deps, common, "Write the JSON report here");

    auto* run = app.add_subcommand("run", "One episode (no training) or one train-and-evaluate cell");
    std::string run_env;
    std::string run_wrapper = "id";
    std::string run_har;
    std::string run_agent = "random";
    std::size_t train_episodes = 0;
    std::size_t eval_episodes = 10;
    std::size_t run_horizon = 8;
    run->add_option("--env", run_env, "Environment id")->required();
    run->add_option("--wrapper", run_wrapper, "Observation wrapper spec")->capture_default_str();
    run->add_option("--har", run_har, "Reward wrapper spec");
    run->add_option("--agent", run_agent, "random or qwin:k[:bins]")->capture_default_str();
    run->add_option("--train-episodes", train_episodes, "Training episodes; 0 runs a single episode")
        ->capture_default_str();
    run->add_option("--eval-episodes", eval_episodes, "Evaluation episodes")->capture_default_str();
    run->add_option("--horizon", run_horizon, "Maximum steps per episode")->capture_default_str();
    add_common(run, common, "Write the episode JSON or the result CSV here");

    auto* sweep = app.add_subcommand("sweep", "Run a sweep config and write CSV");
    std::string config_path;
    std::optional<std::size_t> workers;
    sweep->add_option("--config", config_path, "Sweep config JSON")->required()->check(CLI::ExistingFile);
    sweep->add_option("--workers", workers, "Parallel cells (overrides NMF_WORKERS and the config)");
    add_common(sweep, common, "CSV output path (default: the config's output, else stdout)");

    auto* plot = app.add_subcommand("plot", "Render a sweep CSV as SVG");
    std::string plot_in;
    plot->add_option("--in", plot_in, "Sweep CSV")->required()->check(CLI::ExistingFile);
    add_common(plot, common, "SVG output path (default: input with .svg)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (rev->parsed()) return cmd_verify_reversibility(common, trajectories, kernels, out);
        if (cat->parsed()) return cmd_verify_category(common, cat_envs, random_mdps, horizon, inject, out);
        if (morph->parsed()) return cmd_verify_morphism(common, source, target, map_path, out);
        if (deps->parsed()) return cmd_analyze_deps(common, deps_env, deps_wrapper, deps_t, out, err);
        if (run->parsed()) {
            return cmd_run(common, run_env, run_wrapper, run_har, run_agent, train_episodes, eval_episodes,
                           run_horizon, out);
        }
        if (sweep->parsed()) return cmd_sweep(common, config_path, workers, out);
        if (plot->parsed()) return cmd_plot(common, plot_in, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace nmf::cli
