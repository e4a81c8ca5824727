#include "euler/environments.hpp"

#include <algorithm>
#include <stdexcept>

namespace euler {

namespace {

TabularMDP empty_mdp(int S, int A, int H) {
    TabularMDP mdp;
    mdp.num_states = S;
    mdp.num_actions = A;
    mdp.horizon = H;
    mdp.transitions.assign(
        S, std::vector<std::vector<double>>(A, std::vector<double>(S, 0.0)));
    mdp.rewards.assign(S, std::vector<RewardModel>(A, RewardModel::fixed(0.0)));
    mdp.start_states.assign(S, 0.0);
    return mdp;
}

constexpr int kLeft = 0;
constexpr int kRight = 1;

TabularMDP build_chain(const ChainSpec& spec) {
    const int n = spec.length;
    if (n < 2) throw std::invalid_argument("ChainSpec: length must be >= 2");
    TabularMDP mdp = empty_mdp(n, 2, n);
    const double slip = 1.0 / n;
    for (int s = 0; s < n; ++s) {
        if (s + 1 < n) {
            mdp.transitions[s][kRight][s + 1] = 1.0 - slip;
            mdp.transitions[s][kRight][s] = slip;
        } else {
            mdp.transitions[s][kRight][s] = 1.0;
            mdp.rewards[s][kRight] = RewardModel::fixed(1.0);
        }
        if (s > 0) {
            mdp.transitions[s][kLeft][s - 1] = 1.0;
        } else {
            mdp.transitions[s][kLeft][s] = 1.0;
            mdp.rewards[s][kLeft] = RewardModel::fixed(1.0 / (4.0 * n));
        }
    }
    mdp.start_states[0] = 1.0;
    return mdp;
}

TabularMDP build_bandit(const BanditSpec& spec) {
    const int S = spec.num_states, A = spec.num_actions, H = spec.horizon;
    if (S < 1 || A < 1 || H < 1)
        throw std::invalid_argument("BanditSpec: S, A and H must be positive");
    if (static_cast<int>(spec.context_dist.size()) != S)
        throw std::invalid_argument("BanditSpec: context distribution has wrong size");
    if (static_cast<int>(spec.reward_means.size()) != S)
        throw std::invalid_argument("BanditSpec: reward means have wrong shape");
    TabularMDP mdp = empty_mdp(S, A, H);
    for (int s = 0; s < S; ++s) {
        if (static_cast<int>(spec.reward_means[s].size()) != A)
            throw std::invalid_argument("BanditSpec: reward means have wrong shape");
        for (int a = 0; a < A; ++a) {
            mdp.transitions[s][a] = spec.context_dist;
            mdp.rewards[s][a] = RewardModel::bernoulli(spec.reward_means[s][a]);
        }
    }
    mdp.start_states = spec.context_dist;
    mdp.validate();
    return mdp;
}

TabularMDP build_det_chain(const DeterministicChainSpec& spec) {
    const int n = spec.length;
    if (n < 2) throw std::invalid_argument("DeterministicChainSpec: length must be >= 2");
    TabularMDP mdp = empty_mdp(n, 2, n);
    for (int s = 0; s < n; ++s) {
        if (s + 1 < n) {
            mdp.transitions[s][kRight][s + 1] = 1.0;
        } else {
            mdp.transitions[s][kRight][s] = 1.0;
            mdp.rewards[s][kRight] = RewardModel::fixed(1.0);
        }
        mdp.transitions[s][kLeft][s > 0 ? s - 1 : 0] = 1.0;
    }
    mdp.start_states[0] = 1.0;
    return mdp;
}

TabularMDP build_sparse(const SparseRewardSpec& spec) {
    const int S = spec.num_states, A = spec.num_actions, H = spec.horizon;
    const int goal = spec.goal_state;
    const int sink = S - 1;
    if (S < 3 || A < 1 || H < 1)
        throw std::invalid_argument("SparseRewardSpec: needs S >= 3, A >= 1, H >= 1");
    if (goal < 1 || goal > S - 2)
        throw std::invalid_argument("SparseRewardSpec: goal_state must be in [1, S-2]");
    TabularMDP mdp = empty_mdp(S, A, H);
    // Crossing the corridor takes goal/advance + 1 steps in expectation,
    // about 80% of the horizon, so the goal sits near the end of every
    // episode length.
    const double advance = std::min(0.95, static_cast<double>(goal + 1) / H);
    for (int s = 0; s < S; ++s) {
        for (int a = 0; a < A; ++a) {
            if (s < goal && a == 0) {
                mdp.transitions[s][a][s + 1] = advance;
                mdp.transitions[s][a][s] = 1.0 - advance;
            } else if (s == goal) {
                // The goal pays once and empties into the sink.
                mdp.transitions[s][a][sink] = 1.0;
                mdp.rewards[s][a] = RewardModel::fixed(1.0);
            } else {
                mdp.transitions[s][a][s] = 1.0;
            }
        }
    }
    mdp.start_states[0] = 1.0;
    return mdp;
}

TabularMDP build_random(const RandomMdpSpec& spec) {
    const int S = spec.num_states, A = spec.num_actions, H = spec.horizon;
    if (S < 1 || A < 1 || H < 1)
        throw std::invalid_argument("RandomMdpSpec: S, A and H must be positive");
    if (spec.concentration <= 0.0)
        throw std::invalid_argument("RandomMdpSpec: concentration must be positive");
    TabularMDP mdp = empty_mdp(S, A, H);
    Rng rng = Rng::stream(spec.seed, 0x656e76ULL);
    for (int s = 0; s < S; ++s)
        for (int a = 0; a < A; ++a)
            mdp.transitions[s][a] = rng.next_dirichlet(S, spec.concentration);
    for (int s = 0; s < S; ++s)
        for (int a = 0; a < A; ++a)
            mdp.rewards[s][a] = RewardModel::bernoulli(rng.next_double());
    mdp.start_states.assign(S, 1.0 / S);
    return mdp;
}

} // namespace

TabularMDP build(const EnvSpec& spec) {
    TabularMDP mdp = std::visit(
        [](const auto& s) -> TabularMDP {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ChainSpec>)
                return build_chain(s);
            else if constexpr (std::is_same_v<T, BanditSpec>)
                return build_bandit(s);
            else if constexpr (std::is_same_v<T, DeterministicChainSpec>)
                return build_det_chain(s);
            else if constexpr (std::is_same_v<T, SparseRewardSpec>)
                return build_sparse(s);
            else
                return build_random(s);
        },
        spec);
    mdp.validate();
    return mdp;
}

BanditSpec random_bandit(int num_states, int num_actions, int horizon,
                         std::uint64_t seed) {
    if (num_states < 1 || num_actions < 1 || horizon < 1)
        throw std::invalid_argument("random_bandit: S, A and H must be positive");
    BanditSpec spec;
    spec.num_states = num_states;
    spec.num_actions = num_actions;
    spec.horizon = horizon;
    Rng rng = Rng::stream(seed, 0x62616eULL);
    spec.context_dist = rng.next_dirichlet(num_states, 1.0);
    spec.reward_means.assign(num_states, std::vector<double>(num_actions, 0.0));
    for (int s = 0; s < num_states; ++s)
        for (int a = 0; a < num_actions; ++a) spec.reward_means[s][a] = rng.next_double();
    return spec;
}

StepResult step(const TabularMDP& mdp, int state, int action, Rng& rng) {
    if (state < 0 || state >= mdp.num_states || action < 0 || action >= mdp.num_actions)
        throw std::invalid_argument("step: state or action out of range");
    StepResult out;
    const RewardModel& r = mdp.rewards[state][action];
    out.reward = r.kind == RewardKind::bernoulli
                     ? (rng.next_bernoulli(r.mean) ? 1.0 : 0.0)
                     : r.mean;
    out.next_state = rng.next_index(mdp.transitions[state][action]);
    return out;
}

std::string env_name(const EnvSpec& spec) {
    struct Namer {
        std::string operator()(const ChainSpec& s) const {
            return "chain-n" + std::to_string(s.length);
        }
        std::string operator()(const BanditSpec& s) const {
            return "bandit-s" + std::to_string(s.num_states) + "a" +
                   std::to_string(s.num_actions) + "h" + std::to_string(s.horizon);
        }
        std::string operator()(const DeterministicChainSpec& s) const {
            return "det-chain-s" + std::to_string(s.length);
        }
        std::string operator()(const SparseRewardSpec& s) const {
            return "sparse-s" + std::to_string(s.num_states) + "h" +
                   std::to_string(s.horizon);
        }
        std::string operator()(const RandomMdpSpec& s) const {
            return "random-s" + std::to_string(s.num_states) + "a" +
                   std::to_string(s.num_actions) + "h" + std::to_string(s.horizon) +
                   "-seed" + std::to_string(s.seed);
        }
    };
    return std::visit(Namer{}, spec);
}

} // namespace euler
