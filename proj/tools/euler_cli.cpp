// Command-line driver: run single experiments, parameter sweeps, environment
// diagnostics and algorithm comparisons. Emits CSV traces plus JSON
// diagnostics; plotting is left to external tools (an optional chart spec
// can be emitted for convenience).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "euler/harness.hpp"
#include "euler/serialization.hpp"

namespace {

using nlohmann::json;

struct EnvFlags {
    std::string env;
    int n = 8;
    int states = 5;
    int actions = 2;
    int horizon = 5;
    double alpha = 1.0;
    int goal = 0; // 0: default to states - 2
    std::uint64_t env_seed = 1;
};

void add_env_flags(CLI::App* cmd, EnvFlags& flags) {
    cmd->add_option("--env", flags.env, "environment family")
        ->check(CLI::IsMember({"chain", "bandit", "det-chain", "sparse", "random"}));
    cmd->add_option("--n", flags.n, "chain length (chain)")->check(CLI::PositiveNumber);
    cmd->add_option("--states", flags.states, "number of states")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--actions", flags.actions, "number of actions")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--horizon", flags.horizon, "episode length")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--alpha", flags.alpha, "Dirichlet concentration (random)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--goal", flags.goal, "goal state index (sparse)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--env-seed", flags.env_seed,
                    "construction seed for generated environments");
}

euler::EnvSpec make_env(const EnvFlags& flags) {
    if (flags.env == "chain") return euler::ChainSpec{flags.n};
    if (flags.env == "bandit")
        return euler::random_bandit(flags.states, flags.actions, flags.horizon,
                                    flags.env_seed);
    if (flags.env == "det-chain") return euler::DeterministicChainSpec{flags.states};
    if (flags.env == "sparse") {
        euler::SparseRewardSpec s;
        s.horizon = flags.horizon;
        s.num_states = flags.states;
        s.num_actions = flags.actions;
        s.goal_state = flags.goal > 0 ? flags.goal : flags.states - 2;
        return s;
    }
    if (flags.env == "random") {
        euler::RandomMdpSpec s;
        s.num_states = flags.states;
        s.num_actions = flags.actions;
        s.horizon = flags.horizon;
        s.seed = flags.env_seed;
        s.concentration = flags.alpha;
        return s;
    }
    throw std::invalid_argument("--env is required (chain|bandit|det-chain|sparse|random)");
}

std::string diag_path_for(const std::string& out) {
    std::filesystem::path p(out);
    p.replace_extension(".diag.json");
    return p.string();
}

std::string run_trace_path(const std::string& summary_out, const std::string& env,
                           const std::string& algo, std::uint64_t seed) {
    std::filesystem::path p(summary_out);
    std::filesystem::path dir = p.parent_path();
    std::string stem = p.stem().string();
    std::string name = stem + "__" + env + "__" + algo + "__seed" +
                       std::to_string(seed) + ".csv";
    return (dir / name).string();
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output: " + path);
    out << body;
    if (!out) throw std::runtime_error("failed writing output: " + path);
}

void write_summary_csv(const std::string& path,
                       const std::vector<euler::ExperimentConfig>& configs,
                       const std::vector<euler::RunResult>& results) {
    std::string body = "env,algorithm,seed,episodes,final_cumulative_regret\n";
    char buf[196];
    for (std::size_t i = 0; i < configs.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%s,%s,%llu,%lld,%.17g\n",
                      euler::env_name(configs[i].env).c_str(),
                      euler::algorithm_name(configs[i].algorithm).c_str(),
                      static_cast<unsigned long long>(configs[i].seed),
                      configs[i].episodes, results[i].trace.final_cumulative());
        body += buf;
    }
    write_text_file(path, body);
}

json chart_spec_for(const std::string& csv_path, const std::string& x,
                    const std::string& y, const std::string& series) {
    json enc = {{"x", {{"field", x}, {"type", "quantitative"}}},
                {"y", {{"field", y}, {"type", "quantitative"}}}};
    if (!series.empty()) enc["color"] = {{"field", series}, {"type", "nominal"}};
    return json{{"$schema", "https://vega.github.io/schema/vega-lite/v5.json"},
                {"data", {{"url", csv_path}, {"format", {{"type", "csv"}}}}},
                {"mark", "line"},
                {"encoding", enc}};
}

int cmd_run(const EnvFlags& env_flags, bool config_given, const std::string& config_path,
            const std::vector<std::string>& conflicting, euler::ExperimentConfig config,
            const std::string& chart_path) {
    if (config_given) {
        if (!conflicting.empty())
            throw std::invalid_argument("flag " + conflicting.front() +
                                        " conflicts with --config");
        std::ifstream in(config_path);
        if (!in) throw std::invalid_argument("cannot read config file: " + config_path);
        json j = json::parse(in);
        config = j.get<euler::ExperimentConfig>();
    } else {
        config.env = make_env(env_flags);
    }
    if (config.output_path.empty())
        throw std::invalid_argument("--out is required (or output_path in the config)");
    config.validate();

    const euler::RunResult result = euler::run_experiment(config);
    const json diag = euler::diagnostics_json(result.diagnostics, result.bounds,
                                              result.constants);
    write_text_file(diag_path_for(config.output_path), diag.dump(2) + "\n");
    if (!chart_path.empty()) {
        const json spec = chart_spec_for(config.output_path, "episode",
                                         "cumulative_regret", "");
        write_text_file(chart_path, spec.dump(2) + "\n");
    }
    std::cout << "wrote " << config.output_path << " and "
              << diag_path_for(config.output_path) << "\n";
    return 0;
}

int cmd_diagnose(const EnvFlags& env_flags, long long episodes, double delta) {
    const euler::EnvSpec spec = make_env(env_flags);
    const euler::TabularMDP mdp = euler::build(spec);
    const euler::MdpDiagnostics d = euler::compute_diagnostics(mdp);
    const euler::BoundValues b = euler::theoretical_bounds(mdp, episodes, delta);
    const euler::BonusConstants c = euler::BonusConstants::make(
        mdp.num_states, mdp.num_actions, mdp.horizon, episodes, delta);
    std::cout << euler::diagnostics_json(d, b, c).dump(2) << "\n";
    return 0;
}

int cmd_compare(const EnvFlags& env_flags, const std::vector<std::string>& algos,
                const std::vector<std::uint64_t>& seeds, long long episodes, double delta,
                int eval_stride, std::optional<double> q_cap, const std::string& out,
                const std::string& chart_path) {
    const euler::EnvSpec spec = make_env(env_flags);
    std::vector<euler::ExperimentConfig> configs;
    for (const auto& algo : algos) {
        for (std::uint64_t seed : seeds) {
            euler::ExperimentConfig config;
            config.env = spec;
            config.algorithm = euler::parse_algorithm(algo);
            config.episodes = episodes;
            config.delta = delta;
            config.seed = seed;
            config.eval_stride = eval_stride;
            config.q_cap = q_cap;
            config.output_path = run_trace_path(out, euler::env_name(spec),
                                                euler::algorithm_name(config.algorithm),
                                                seed);
            config.validate();
            configs.push_back(config);
        }
    }
    if (configs.size() < 2)
        throw std::invalid_argument("compare needs at least two runs (algos x seeds)");

    const std::vector<euler::RunResult> results = euler::run_batch(configs);
    write_summary_csv(out, configs, results);

    euler::Comparison comparison = euler::summarize(configs, results);
    const euler::TabularMDP mdp = euler::build(spec);
    comparison.bounds = euler::theoretical_bounds(mdp, episodes, delta);

    json medians = json::object();
    for (const auto& s : comparison.summaries)
        medians[euler::algorithm_name(s.algorithm)] = s.median_final_regret;
    json doc = {{"env", euler::env_name(spec)},
                {"episodes", episodes},
                {"median_final_regret", medians},
                {"bound_problem_dep", comparison.bounds.problem_dependent},
                {"bound_max_return", comparison.bounds.max_return_term},
                {"bound_worst_case", comparison.bounds.worst_case}};
    std::cout << doc.dump(2) << "\n";
    if (!chart_path.empty())
        write_text_file(chart_path,
                        chart_spec_for(out, "seed", "final_cumulative_regret",
                                       "algorithm")
                                .dump(2) +
                            "\n");
    return 0;
}

int cmd_sweep(const EnvFlags& env_flags, const std::vector<int>& n_grid,
              const std::vector<int>& horizon_grid, const std::string& algo,
              const std::vector<std::uint64_t>& seeds, long long episodes, double delta,
              int eval_stride, std::optional<double> q_cap, const std::string& out) {
    std::vector<euler::EnvSpec> specs;
    if (!n_grid.empty()) {
        for (int n : n_grid) {
            EnvFlags point = env_flags;
            point.n = n;
            point.states = n;
            specs.push_back(make_env(point));
        }
    } else if (!horizon_grid.empty()) {
        for (int h : horizon_grid) {
            EnvFlags point = env_flags;
            point.horizon = h;
            specs.push_back(make_env(point));
        }
    } else {
        specs.push_back(make_env(env_flags));
    }

    std::vector<euler::ExperimentConfig> configs;
    for (const auto& spec : specs) {
        for (std::uint64_t seed : seeds) {
            euler::ExperimentConfig config;
            config.env = spec;
            config.algorithm = euler::parse_algorithm(algo);
            config.episodes = episodes;
            config.delta = delta;
            config.seed = seed;
            config.eval_stride = eval_stride;
            config.q_cap = q_cap;
            config.output_path = run_trace_path(out, euler::env_name(spec),
                                                euler::algorithm_name(config.algorithm),
                                                seed);
            config.validate();
            configs.push_back(config);
        }
    }
    const std::vector<euler::RunResult> results = euler::run_batch(configs);
    write_summary_csv(out, configs, results);
    std::cout << "wrote " << out << " and " << configs.size() << " trace files\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimistic exploration for tabular episodic MDPs"};
    app.require_subcommand(1);

    // --- run ---
    auto* run = app.add_subcommand("run", "run one seeded experiment");
    EnvFlags run_env;
    add_env_flags(run, run_env);
    std::string run_algo = "euler";
    long long run_episodes = 1000;
    double run_delta = 0.05;
    std::uint64_t run_seed = 1;
    int run_stride = 1;
    double run_q_cap = 0.0;
    std::string run_out, run_config, run_chart;
    run->add_option("--algo", run_algo, "euler|hoeffding")
        ->check(CLI::IsMember({"euler", "hoeffding"}));
    run->add_option("--episodes", run_episodes, "number of episodes")
        ->check(CLI::NonNegativeNumber);
    run->add_option("--delta", run_delta, "failure probability");
    run->add_option("--seed", run_seed, "experiment seed");
    run->add_option("--eval-stride", run_stride, "episodes between exact evaluations")
        ->check(CLI::PositiveNumber);
    auto* run_q_cap_opt = run->add_option("--q-cap", run_q_cap,
                                          "cap backed-up Q-values (e.g. 1)");
    run->add_option("--out", run_out, "trace CSV path");
    run->add_option("--config", run_config, "JSON config file");
    run->add_option("--chart", run_chart, "optional chart-spec JSON path");

    // --- diagnose ---
    auto* diagnose = app.add_subcommand("diagnose", "print environment diagnostics");
    EnvFlags diag_env;
    add_env_flags(diagnose, diag_env);
    long long diag_episodes = 10000;
    double diag_delta = 0.05;
    diagnose->add_option("--episodes", diag_episodes, "episode budget for bound values")
        ->check(CLI::NonNegativeNumber);
    diagnose->add_option("--delta", diag_delta, "failure probability");

    // --- compare ---
    auto* comp = app.add_subcommand("compare", "run algorithms head to head");
    EnvFlags comp_env;
    add_env_flags(comp, comp_env);
    std::vector<std::string> comp_algos{"euler", "hoeffding"};
    std::vector<std::uint64_t> comp_seeds{1};
    long long comp_episodes = 1000;
    double comp_delta = 0.05;
    int comp_stride = 1;
    double comp_q_cap = 0.0;
    std::string comp_out, comp_chart;
    comp->add_option("--algos", comp_algos, "algorithms to compare")->delimiter(',');
    comp->add_option("--seeds", comp_seeds, "seeds, one run each")->delimiter(',');
    comp->add_option("--episodes", comp_episodes)->check(CLI::NonNegativeNumber);
    comp->add_option("--delta", comp_delta);
    comp->add_option("--eval-stride", comp_stride)->check(CLI::PositiveNumber);
    auto* comp_q_cap_opt = comp->add_option("--q-cap", comp_q_cap);
    comp->add_option("--out", comp_out, "summary CSV path")->required();
    comp->add_option("--chart", comp_chart, "optional chart-spec JSON path");

    // --- sweep ---
    auto* sweep = app.add_subcommand("sweep", "grid of runs over env parameters/seeds");
    EnvFlags sweep_env;
    sweep->add_option("--env", sweep_env.env, "environment family")
        ->check(CLI::IsMember({"chain", "bandit", "det-chain", "sparse", "random"}));
    std::vector<int> sweep_n, sweep_h;
    sweep->add_option("--n", sweep_n, "chain lengths to sweep")->delimiter(',');
    sweep->add_option("--horizon", sweep_h, "horizons to sweep")->delimiter(',');
    sweep->add_option("--states", sweep_env.states)->check(CLI::PositiveNumber);
    sweep->add_option("--actions", sweep_env.actions)->check(CLI::PositiveNumber);
    sweep->add_option("--alpha", sweep_env.alpha)->check(CLI::PositiveNumber);
    sweep->add_option("--goal", sweep_env.goal)->check(CLI::NonNegativeNumber);
    sweep->add_option("--env-seed", sweep_env.env_seed);
    std::string sweep_algo = "euler";
    std::vector<std::uint64_t> sweep_seeds{1};
    long long sweep_episodes = 1000;
    double sweep_delta = 0.05;
    int sweep_stride = 1;
    double sweep_q_cap = 0.0;
    std::string sweep_out;
    sweep->add_option("--algo", sweep_algo)->check(CLI::IsMember({"euler", "hoeffding"}));
    sweep->add_option("--seeds", sweep_seeds)->delimiter(',');
    sweep->add_option("--episodes", sweep_episodes)->check(CLI::NonNegativeNumber);
    sweep->add_option("--delta", sweep_delta);
    sweep->add_option("--eval-stride", sweep_stride)->check(CLI::PositiveNumber);
    auto* sweep_q_cap_opt = sweep->add_option("--q-cap", sweep_q_cap);
    sweep->add_option("--out", sweep_out, "summary CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (run->parsed()) {
            euler::ExperimentConfig config;
            config.algorithm = euler::parse_algorithm(run_algo);
            config.episodes = run_episodes;
            config.delta = run_delta;
            config.seed = run_seed;
            config.eval_stride = run_stride;
            if (run_q_cap_opt->count() > 0) config.q_cap = run_q_cap;
            config.output_path = run_out;

            // Any flag that feeds the config conflicts with --config.
            std::vector<std::string> conflicting;
            for (const char* name :
                 {"--env", "--n", "--states", "--actions", "--horizon", "--alpha",
                  "--goal", "--env-seed", "--algo", "--episodes", "--delta", "--seed",
                  "--eval-stride", "--q-cap", "--out"}) {
                if (run->get_option(name)->count() > 0) conflicting.push_back(name);
            }
            return cmd_run(run_env, !run_config.empty(), run_config, conflicting, config,
                           run_chart);
        }
        if (diagnose->parsed()) return cmd_diagnose(diag_env, diag_episodes, diag_delta);
        if (comp->parsed()) {
            std::optional<double> q_cap;
            if (comp_q_cap_opt->count() > 0) q_cap = comp_q_cap;
            return cmd_compare(comp_env, comp_algos, comp_seeds, comp_episodes,
                               comp_delta, comp_stride, q_cap, comp_out, comp_chart);
        }
        if (sweep->parsed()) {
            std::optional<double> q_cap;
            if (sweep_q_cap_opt->count() > 0) q_cap = sweep_q_cap;
            return cmd_sweep(sweep_env, sweep_n, sweep_h, sweep_algo, sweep_seeds,
                             sweep_episodes, sweep_delta, sweep_stride, q_cap, sweep_out);
        }
        std::cerr << "no subcommand given\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
