#pragma once

#include <optional>
#include <span>
#include <vector>

#include "euler/concentration.hpp"
#include "euler/mdp.hpp"

namespace euler {

/**
 * Visit counts and running reward moments per (state, action), with
 * transition counts per (state, action, next state). Counts are shared
 * across timesteps (the kernel is stationary).
 */
struct SufficientStats {
    int num_states = 0;
    int num_actions = 0;
    std::vector<long long> visits;            // [s * A + a]
    std::vector<long long> transition_counts; // [(s * A + a) * S + s']
    std::vector<double> reward_sum;           // [s * A + a]
    std::vector<double> reward_sq_sum;        // [s * A + a]

    SufficientStats() = default;
    SufficientStats(int S, int A);

    long long count(int s, int a) const { return visits[s * num_actions + a]; }

    /// One interaction sample. Throws when r is outside [0, 1] or an index
    /// is out of range.
    void record(int s, int a, double r, int s_next);

    /// Per-(s,a) transition counts sum to the visit count and the reward
    /// moments admit a nonnegative variance.
    bool consistent() const;
};

/// Pointwise upper/lower envelopes of the optimal values plus the greedy
/// policy of the upper envelope. Rows follow the ValueTable convention.
struct ValueBracket {
    ValueTable upper;
    ValueTable lower;
    PolicyTable policy;
};

struct PlanOptions {
    /// Extra cap on every backed-up Q-value (bounded-total-reward runs cap
    /// at 1); unset means only the remaining-steps cap applies.
    std::optional<double> q_cap;
};

struct PlanCounters {
    long long bonus_evaluations = 0; // one per (t, s, a) Q-value computation
};

/**
 * One full backward-induction sweep over the current statistics.
 *
 * For each (t, s, a): Q(a) caps at the number of remaining reward
 * opportunities; unvisited pairs sit at the cap (maximal optimism) and
 * contribute zero to the lower envelope. Visited pairs back up the empirical
 * model plus the reward bonus and the combined transition bonus. Argmax ties
 * break toward the lowest action index. Deterministic: identical stats and
 * constants give a bit-identical bracket.
 */
ValueBracket plan(const SufficientStats& stats, const BonusConstants& c,
                  const ConfidenceInterval& interval, const PlanOptions& options = {},
                  PlanCounters* counters = nullptr);

/// Greedy action lookup; step is 0-based in [0, H).
int act(const ValueBracket& bracket, int state, int step);

/// Mean width of the first-step bracket under the given state weights.
double bracket_width(const ValueBracket& bracket, std::span<const double> weights);

} // namespace euler
