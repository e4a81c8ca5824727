#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "euler/agent.hpp"
#include "euler/environments.hpp"
#include "euler/mdp.hpp"

namespace euler {

enum class Algorithm {
    euler_bernstein,         // empirical-Bernstein bonuses with corrections
    euler_hoeffding_baseline // worst-case transition bonus, no corrections
};

std::string algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

struct ExperimentConfig {
    EnvSpec env;
    Algorithm algorithm = Algorithm::euler_bernstein;
    long long episodes = 0;
    double delta = 0.05;
    std::uint64_t seed = 0;
    int eval_stride = 1;
    std::optional<double> q_cap; // bounded-total-reward cap, off by default
    std::string output_path;     // empty: no trace file written

    void validate() const;
};

struct EpisodeRecord {
    long long episode = 0; // 1-based index
    int start_state = 0;
    double instant_regret = 0.0;
    double cumulative_regret = 0.0;
    double bracket_width = 0.0; // first-step width at the realized start state
    bool violation = false;     // bracket failed to contain the optimal values
};

struct RegretTrace {
    std::vector<EpisodeRecord> episodes;

    double final_cumulative() const {
        return episodes.empty() ? 0.0 : episodes.back().cumulative_regret;
    }
};

struct RunResult {
    RegretTrace trace;
    MdpDiagnostics diagnostics;
    BoundValues bounds;
    BonusConstants constants;
};

/**
 * Runs the configured agent for the configured number of episodes against
 * the built environment. Per-episode regret is measured by exact policy
 * evaluation on the true MDP (re-evaluated whenever the greedy policy
 * changes or the evaluation stride elapses, reused otherwise), and bracket
 * containment of the exact optimal values is checked over the full (t, s)
 * table each episode. Writes the trace CSV when an output path is set.
 */
RunResult run_experiment(const ExperimentConfig& config);

/// Fraction of recorded episodes whose bracket-violation flag is set.
double optimism_violation_rate(const RegretTrace& trace);

struct AlgorithmSummary {
    Algorithm algorithm = Algorithm::euler_bernstein;
    std::vector<double> final_regrets; // one per run, in input order
    double median_final_regret = 0.0;
};

struct Comparison {
    std::vector<AlgorithmSummary> summaries;
    BoundValues bounds;
};

/// Runs every config concurrently (each run owns its agent, generator and
/// trace) and returns the results in input order. Configs carrying an output
/// path must point at distinct files.
std::vector<RunResult> run_batch(const std::vector<ExperimentConfig>& configs);

/// Groups finished runs by algorithm and takes the median final regret.
Comparison summarize(const std::vector<ExperimentConfig>& configs,
                     const std::vector<RunResult>& results);

/**
 * Head-to-head over a batch of configs sharing one environment: runs execute
 * concurrently and final cumulative regrets are summarized per algorithm by
 * their median, with the bound values of the shared environment attached.
 * Throws when the configs do not share the environment.
 */
Comparison compare(const std::vector<ExperimentConfig>& configs);

/// Trace CSV, 17 significant digits:
/// episode,start_state,instant_regret,cumulative_regret,bracket_width,violation
void write_trace_csv(const RegretTrace& trace, std::ostream& out);
std::string trace_csv_string(const RegretTrace& trace);
void write_trace_csv_file(const RegretTrace& trace, const std::string& path);

} // namespace euler
