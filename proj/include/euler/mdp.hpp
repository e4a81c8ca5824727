#pragma once

#include <string>
#include <vector>

namespace euler {

enum class RewardKind { deterministic, bernoulli };

/**
 * Reward distribution for one (state, action) pair. Both supported kinds
 * have closed-form mean, variance and maximum support value:
 *   deterministic(v): always pays v;
 *   bernoulli(p):     pays 1 with probability p, else 0.
 */
struct RewardModel {
    RewardKind kind = RewardKind::deterministic;
    double mean = 0.0; // deterministic: the fixed value; bernoulli: success probability

    static RewardModel fixed(double value) { return {RewardKind::deterministic, value}; }
    static RewardModel bernoulli(double p) { return {RewardKind::bernoulli, p}; }

    double variance() const {
        return kind == RewardKind::bernoulli ? mean * (1.0 - mean) : 0.0;
    }
    /// Largest value the reward can realize.
    double support_max() const {
        if (kind == RewardKind::deterministic) return mean;
        return mean > 0.0 ? 1.0 : 0.0;
    }
};

/// value[t][s] with t in [0, H]: expected return with t steps already elapsed.
/// Row H is identically zero.
using ValueTable = std::vector<std::vector<double>>;

/// policy[t][s] with t in [0, H): action to take at state s with t steps elapsed.
using PolicyTable = std::vector<std::vector<int>>;

/**
 * Ground-truth tabular MDP with a stationary transition kernel, per-pair
 * reward distributions, fixed episode length and a start-state distribution.
 */
struct TabularMDP {
    int num_states = 0;
    int num_actions = 0;
    int horizon = 0;
    std::vector<std::vector<std::vector<double>>> transitions; // [s][a] -> distribution over s'
    std::vector<std::vector<RewardModel>> rewards;             // [s][a]
    std::vector<double> start_states;

    /// Throws std::invalid_argument when a structural invariant is broken
    /// (row sums off by more than 1e-9, rewards outside [0,1], bad shapes).
    void validate() const;
};

struct Solution {
    ValueTable values;
    PolicyTable policy;
};

/// Exact optimal values and a greedy policy by backward induction.
/// Argmax ties break toward the lowest action index.
Solution optimal_values(const TabularMDP& mdp);

/// Exact evaluation of a fixed policy by backward induction.
ValueTable policy_values(const TabularMDP& mdp, const PolicyTable& policy);

/**
 * Largest per-step conditional variance over all (s, a, t): reward variance
 * plus the next-state variance of the optimal value function. Zero for fully
 * deterministic domains.
 */
double environmental_norm(const TabularMDP& mdp);

/// Deterministic upper bound on the return any single episode can realize,
/// computed over reward support maxima along reachable successor supports.
double max_return(const TabularMDP& mdp);

/// Largest range of the next-step optimal values across the successor support
/// of any (s, a, t). Zero when every pair has a single successor.
double successor_range(const TabularMDP& mdp);

struct MdpDiagnostics {
    double environmental_norm = 0.0;
    double max_return = 0.0;
    double successor_range = 0.0;
    double value_range = 0.0; // range of the optimal values at the first step
};

/// All problem-hardness diagnostics in one pass (solves the MDP once).
MdpDiagnostics compute_diagnostics(const TabularMDP& mdp);

struct BoundValues {
    double problem_dependent = 0.0; // sqrt(Q* S A T)
    double max_return_term = 0.0;   // G sqrt(S A T)
    double worst_case = 0.0;        // sqrt(H S A T)
};

/// Leading regret-bound terms with log factors set to 1 and T = episodes * H.
/// Diagnostics for plotting against measured regret, not certified bounds.
BoundValues theoretical_bounds(const TabularMDP& mdp, long long episodes, double delta);

} // namespace euler
