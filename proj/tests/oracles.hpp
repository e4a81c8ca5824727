#pragma once

// Test-only reference computations, kept independent of the library's
// solver paths: policies are enumerated exhaustively and evaluated by
// forward trajectory-distribution expansion, variances are mean-centered,
// and the max-return search walks the support tree recursively.

#include <cstdint>
#include <vector>

#include "euler/mdp.hpp"
#include "euler/rng.hpp"

namespace oracle {

// Best deterministic policy by brute force over all A^(S*H) policies, each
// evaluated by expanding the state distribution forward from every (s, t).
euler::Solution enumerate_policies(const euler::TabularMDP& mdp);

// Forward-expansion policy evaluation (no backward induction).
euler::ValueTable forward_policy_values(const euler::TabularMDP& mdp,
                                        const euler::PolicyTable& policy);

// Plain re-derivation of the optimal values in long double, for instances
// too large to enumerate.
euler::ValueTable optimal_values_longdouble(const euler::TabularMDP& mdp);

// max_{s,a,t} [Var R + mean-centered next-state variance of values[t+1]].
double environmental_norm_enum(const euler::TabularMDP& mdp,
                               const euler::ValueTable& optimal);

// max_{s,a,t} range of values[t+1] over the support of p(s, a).
double successor_range_enum(const euler::TabularMDP& mdp,
                            const euler::ValueTable& optimal);

// Recursive walk of every support trajectory maximizing summed reward
// support maxima; exponential, only for tiny instances.
double max_return_search(const euler::TabularMDP& mdp);

// Random dense instance for property tests: rows from normalized
// exponentials, rewards a mix of deterministic and Bernoulli.
euler::TabularMDP random_mdp(int num_states, int num_actions, int horizon,
                             std::uint64_t seed);

// Uniformly random deterministic policy.
euler::PolicyTable random_policy(const euler::TabularMDP& mdp, std::uint64_t seed);

// Relabels the states of an MDP by the given permutation.
euler::TabularMDP permute_states(const euler::TabularMDP& mdp,
                                 const std::vector<int>& perm);

} // namespace oracle
