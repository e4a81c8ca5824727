#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "euler/mdp.hpp"
#include "euler/rng.hpp"

namespace euler {

/// Hard-exploration chain: N states, H = N, two actions. RIGHT advances with
/// probability 1 - 1/N (else stays) and pays 1 at the last state, which
/// absorbs under RIGHT; LEFT walks back deterministically and pays 1/(4N)
/// only at the first state. Episodes start at the first state.
struct ChainSpec {
    int length = 0; // N = S = H

    bool operator==(const ChainSpec&) const = default;
};

/// Contextual-bandit MDP: every (s, a) transitions with the same fixed
/// context distribution; rewards are Bernoulli with per-(s, a) means.
struct BanditSpec {
    int num_states = 0;
    int num_actions = 0;
    int horizon = 0;
    std::vector<double> context_dist;
    std::vector<std::vector<double>> reward_means; // [s][a]

    bool operator==(const BanditSpec&) const = default;
};

/// Deterministic corridor with H = S: RIGHT steps forward and pays 1 at the
/// last state, LEFT steps back; all other rewards are zero.
struct DeterministicChainSpec {
    int length = 0; // S = H

    bool operator==(const DeterministicChainSpec&) const = default;
};

/// Bounded-total-reward corridor: advancing reaches an absorbing goal that
/// pays 1 exactly once (the goal empties into a zero-reward sink), so no
/// trajectory can collect more than 1 in an episode. The advance
/// probability shrinks with the horizon so that crossing consumes most of
/// the episode regardless of its length.
struct SparseRewardSpec {
    int horizon = 0;
    int num_states = 0; // corridor + goal + sink
    int num_actions = 0;
    int goal_state = 0; // in [1, num_states - 2]

    bool operator==(const SparseRewardSpec&) const = default;
};

/// Dirichlet-random kernel with Bernoulli rewards and a uniform start.
struct RandomMdpSpec {
    int num_states = 0;
    int num_actions = 0;
    int horizon = 0;
    std::uint64_t seed = 0;
    double concentration = 1.0; // Dirichlet parameter, > 0

    bool operator==(const RandomMdpSpec&) const = default;
};

using EnvSpec =
    std::variant<ChainSpec, BanditSpec, DeterministicChainSpec, SparseRewardSpec,
                 RandomMdpSpec>;

/// Materializes the spec into a validated TabularMDP.
TabularMDP build(const EnvSpec& spec);

/// Seeded bandit instance: Dirichlet(1) context distribution, uniform
/// reward means.
BanditSpec random_bandit(int num_states, int num_actions, int horizon,
                         std::uint64_t seed);

struct StepResult {
    int next_state = 0;
    double reward = 0.0;
};

/// Samples one interaction: the reward draw (Bernoulli rewards consume one
/// uniform, deterministic rewards none) followed by the next-state draw.
StepResult step(const TabularMDP& mdp, int state, int action, Rng& rng);

/// Short identifier for file names and summary rows, e.g. "chain-n8".
std::string env_name(const EnvSpec& spec);

} // namespace euler
