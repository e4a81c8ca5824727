#include "euler/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace euler {

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::euler_bernstein: return "euler_bernstein";
        case Algorithm::euler_hoeffding_baseline: return "euler_hoeffding_baseline";
    }
    throw std::invalid_argument("algorithm_name: unknown algorithm");
}

Algorithm parse_algorithm(const std::string& name) {
    if (name == "euler_bernstein" || name == "euler") return Algorithm::euler_bernstein;
    if (name == "euler_hoeffding_baseline" || name == "hoeffding")
        return Algorithm::euler_hoeffding_baseline;
    throw std::invalid_argument("unknown algorithm: " + name);
}

void ExperimentConfig::validate() const {
    if (episodes < 0) throw std::invalid_argument("ExperimentConfig: episodes must be >= 0");
    if (delta <= 0.0 || delta >= 1.0)
        throw std::invalid_argument("ExperimentConfig: delta must be in (0, 1)");
    if (eval_stride < 1)
        throw std::invalid_argument("ExperimentConfig: eval_stride must be >= 1");
    if (q_cap && *q_cap <= 0.0)
        throw std::invalid_argument("ExperimentConfig: q_cap must be positive");
}

namespace {

constexpr double kBracketTol = 1e-9;

bool bracket_violated(const ValueBracket& bracket, const ValueTable& optimal) {
    for (std::size_t t = 0; t < optimal.size(); ++t) {
        for (std::size_t s = 0; s < optimal[t].size(); ++s) {
            if (bracket.lower[t][s] > optimal[t][s] + kBracketTol) return true;
            if (bracket.upper[t][s] < optimal[t][s] - kBracketTol) return true;
        }
    }
    return false;
}

std::unique_ptr<ConfidenceInterval> make_interval(Algorithm a, const BonusConstants& c) {
    if (a == Algorithm::euler_hoeffding_baseline)
        return std::make_unique<HoeffdingInterval>(c);
    return std::make_unique<BernsteinInterval>(c);
}

} // namespace

RunResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    const TabularMDP mdp = build(config.env);
    const int S = mdp.num_states, A = mdp.num_actions, H = mdp.horizon;

    RunResult result;
    result.diagnostics = compute_diagnostics(mdp);
    result.bounds = theoretical_bounds(mdp, config.episodes, config.delta);
    result.constants = BonusConstants::make(S, A, H, config.episodes, config.delta);

    const Solution optimal = optimal_values(mdp);
    const auto interval = make_interval(config.algorithm, result.constants);

    PlanOptions options;
    options.q_cap = config.q_cap;

    SufficientStats stats(S, A);
    PolicyTable evaluated_policy;
    ValueTable evaluated_values;
    double cumulative = 0.0;
    result.trace.episodes.reserve(static_cast<std::size_t>(config.episodes));

    for (long long k = 1; k <= config.episodes; ++k) {
        const ValueBracket bracket = plan(stats, result.constants, *interval, options);

        // Exact gap via DP; the cached table is reused while the policy is
        // unchanged between stride boundaries.
        const bool stride_due = (k - 1) % config.eval_stride == 0;
        if (stride_due || bracket.policy != evaluated_policy) {
            evaluated_policy = bracket.policy;
            evaluated_values = policy_values(mdp, evaluated_policy);
        }

        Rng rng = Rng::stream(config.seed, static_cast<std::uint64_t>(k));
        int state = rng.next_index(mdp.start_states);

        EpisodeRecord rec;
        rec.episode = k;
        rec.start_state = state;
        double gap = optimal.values[0][state] - evaluated_values[0][state];
        if (gap < 0.0 && gap > -1e-10) gap = 0.0; // rounding dust only
        rec.instant_regret = gap;
        cumulative += gap;
        rec.cumulative_regret = cumulative;
        rec.bracket_width = bracket.upper[0][state] - bracket.lower[0][state];
        rec.violation = bracket_violated(bracket, optimal.values);

        for (int t = 0; t < H; ++t) {
            const int a = bracket.policy[t][state];
            const StepResult sr = step(mdp, state, a, rng);
            stats.record(state, a, sr.reward, sr.next_state);
            state = sr.next_state;
        }
        result.trace.episodes.push_back(rec);
    }

    if (!config.output_path.empty())
        write_trace_csv_file(result.trace, config.output_path);
    return result;
}

double optimism_violation_rate(const RegretTrace& trace) {
    if (trace.episodes.empty()) return 0.0;
    long long flagged = 0;
    for (const auto& rec : trace.episodes) flagged += rec.violation ? 1 : 0;
    return static_cast<double>(flagged) / static_cast<double>(trace.episodes.size());
}

namespace {

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size() / 2;
    if (values.size() % 2 == 1) return values[m];
    return 0.5 * (values[m - 1] + values[m]);
}

} // namespace

std::vector<RunResult> run_batch(const std::vector<ExperimentConfig>& configs) {
    std::vector<std::future<RunResult>> futures;
    futures.reserve(configs.size());
    for (const auto& config : configs) {
        futures.push_back(std::async(std::launch::async,
                                     [config] { return run_experiment(config); }));
    }
    std::vector<RunResult> results;
    results.reserve(configs.size());
    for (auto& f : futures) results.push_back(f.get());
    return results;
}

Comparison summarize(const std::vector<ExperimentConfig>& configs,
                     const std::vector<RunResult>& results) {
    if (configs.size() != results.size())
        throw std::invalid_argument("summarize: configs and results differ in length");
    Comparison out;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const Algorithm algo = configs[i].algorithm;
        auto it = std::find_if(out.summaries.begin(), out.summaries.end(),
                               [&](const AlgorithmSummary& s) { return s.algorithm == algo; });
        if (it == out.summaries.end()) {
            out.summaries.push_back(AlgorithmSummary{algo, {}, 0.0});
            it = std::prev(out.summaries.end());
        }
        it->final_regrets.push_back(results[i].trace.final_cumulative());
    }
    for (auto& summary : out.summaries)
        summary.median_final_regret = median(summary.final_regrets);
    return out;
}

Comparison compare(const std::vector<ExperimentConfig>& configs) {
    if (configs.size() < 2)
        throw std::invalid_argument("compare: needs at least two configs");
    for (const auto& config : configs) {
        if (!(config.env == configs.front().env))
            throw std::invalid_argument("compare: configs must share the environment");
    }

    std::vector<ExperimentConfig> run_configs = configs;
    for (auto& config : run_configs) config.output_path.clear();
    const std::vector<RunResult> results = run_batch(run_configs);

    Comparison out = summarize(configs, results);
    const TabularMDP mdp = build(configs.front().env);
    long long max_episodes = 0;
    for (const auto& config : configs) max_episodes = std::max(max_episodes, config.episodes);
    out.bounds = theoretical_bounds(mdp, max_episodes, configs.front().delta);
    return out;
}

void write_trace_csv(const RegretTrace& trace, std::ostream& out) {
    out << "episode,start_state,instant_regret,cumulative_regret,bracket_width,violation\n";
    char buf[128];
    for (const auto& rec : trace.episodes) {
        std::snprintf(buf, sizeof(buf), "%lld,%d,%.17g,%.17g,%.17g,%d\n", rec.episode,
                      rec.start_state, rec.instant_regret, rec.cumulative_regret,
                      rec.bracket_width, rec.violation ? 1 : 0);
        out << buf;
    }
}

std::string trace_csv_string(const RegretTrace& trace) {
    std::ostringstream out;
    write_trace_csv(trace, out);
    return out.str();
}

void write_trace_csv_file(const RegretTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open trace output: " + path);
    write_trace_csv(trace, out);
    if (!out) throw std::runtime_error("failed writing trace output: " + path);
}

} // namespace euler
