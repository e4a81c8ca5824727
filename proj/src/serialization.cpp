#include "euler/serialization.hpp"

#include <stdexcept>

namespace euler {

using nlohmann::json;

void to_json(json& j, const RewardModel& r) {
    if (r.kind == RewardKind::deterministic)
        j = json{{"kind", "deterministic"}, {"value", r.mean}};
    else
        j = json{{"kind", "bernoulli"}, {"mean", r.mean}};
}

void from_json(const json& j, RewardModel& r) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "deterministic") {
        r = RewardModel::fixed(j.at("value").get<double>());
    } else if (kind == "bernoulli") {
        r = RewardModel::bernoulli(j.at("mean").get<double>());
    } else {
        throw std::invalid_argument("unknown reward kind: " + kind);
    }
}

void to_json(json& j, const TabularMDP& mdp) {
    j = json{{"S", mdp.num_states},        {"A", mdp.num_actions},
             {"H", mdp.horizon},           {"transitions", mdp.transitions},
             {"rewards", mdp.rewards},     {"start", mdp.start_states}};
}

void from_json(const json& j, TabularMDP& mdp) {
    mdp.num_states = j.at("S").get<int>();
    mdp.num_actions = j.at("A").get<int>();
    mdp.horizon = j.at("H").get<int>();
    j.at("transitions").get_to(mdp.transitions);
    j.at("rewards").get_to(mdp.rewards);
    j.at("start").get_to(mdp.start_states);
    mdp.validate();
}

void to_json(json& j, const EnvSpec& spec) {
    struct Visitor {
        json& j;
        void operator()(const ChainSpec& s) const {
            j = json{{"kind", "chain"}, {"n", s.length}};
        }
        void operator()(const BanditSpec& s) const {
            j = json{{"kind", "bandit"},
                     {"states", s.num_states},
                     {"actions", s.num_actions},
                     {"horizon", s.horizon},
                     {"mu", s.context_dist},
                     {"reward_means", s.reward_means}};
        }
        void operator()(const DeterministicChainSpec& s) const {
            j = json{{"kind", "det-chain"}, {"states", s.length}};
        }
        void operator()(const SparseRewardSpec& s) const {
            j = json{{"kind", "sparse"},
                     {"horizon", s.horizon},
                     {"states", s.num_states},
                     {"actions", s.num_actions},
                     {"goal", s.goal_state}};
        }
        void operator()(const RandomMdpSpec& s) const {
            j = json{{"kind", "random"},       {"states", s.num_states},
                     {"actions", s.num_actions}, {"horizon", s.horizon},
                     {"seed", s.seed},          {"alpha", s.concentration}};
        }
    };
    std::visit(Visitor{j}, spec);
}

void from_json(const json& j, EnvSpec& spec) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "chain") {
        spec = ChainSpec{j.at("n").get<int>()};
    } else if (kind == "bandit") {
        BanditSpec s;
        s.num_states = j.at("states").get<int>();
        s.num_actions = j.at("actions").get<int>();
        s.horizon = j.at("horizon").get<int>();
        j.at("mu").get_to(s.context_dist);
        j.at("reward_means").get_to(s.reward_means);
        spec = s;
    } else if (kind == "det-chain") {
        spec = DeterministicChainSpec{j.at("states").get<int>()};
    } else if (kind == "sparse") {
        SparseRewardSpec s;
        s.horizon = j.at("horizon").get<int>();
        s.num_states = j.at("states").get<int>();
        s.num_actions = j.at("actions").get<int>();
        s.goal_state = j.at("goal").get<int>();
        spec = s;
    } else if (kind == "random") {
        RandomMdpSpec s;
        s.num_states = j.at("states").get<int>();
        s.num_actions = j.at("actions").get<int>();
        s.horizon = j.at("horizon").get<int>();
        s.seed = j.at("seed").get<std::uint64_t>();
        s.concentration = j.at("alpha").get<double>();
        spec = s;
    } else {
        throw std::invalid_argument("unknown environment kind: " + kind);
    }
}

void to_json(json& j, const ExperimentConfig& config) {
    j = json{{"env", config.env},
             {"algorithm", algorithm_name(config.algorithm)},
             {"episodes", config.episodes},
             {"delta", config.delta},
             {"seed", config.seed},
             {"eval_stride", config.eval_stride},
             {"q_cap", config.q_cap ? json(*config.q_cap) : json(nullptr)},
             {"output_path", config.output_path}};
}

void from_json(const json& j, ExperimentConfig& config) {
    j.at("env").get_to(config.env);
    config.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
    config.episodes = j.at("episodes").get<long long>();
    config.delta = j.at("delta").get<double>();
    config.seed = j.at("seed").get<std::uint64_t>();
    config.eval_stride = j.value("eval_stride", 1);
    if (j.contains("q_cap") && !j.at("q_cap").is_null())
        config.q_cap = j.at("q_cap").get<double>();
    else
        config.q_cap.reset();
    config.output_path = j.value("output_path", std::string{});
}

void to_json(json& j, const SufficientStats& stats) {
    const int S = stats.num_states, A = stats.num_actions;
    json n = json::array(), trans = json::array(), rsum = json::array(),
         rsq = json::array();
    for (int s = 0; s < S; ++s) {
        json n_row = json::array(), t_row = json::array(), rs_row = json::array(),
             rq_row = json::array();
        for (int a = 0; a < A; ++a) {
            const std::size_t sa = static_cast<std::size_t>(s) * A + a;
            n_row.push_back(stats.visits[sa]);
            json counts = json::array();
            for (int sp = 0; sp < S; ++sp)
                counts.push_back(stats.transition_counts[sa * S + sp]);
            t_row.push_back(counts);
            rs_row.push_back(stats.reward_sum[sa]);
            rq_row.push_back(stats.reward_sq_sum[sa]);
        }
        n.push_back(n_row);
        trans.push_back(t_row);
        rsum.push_back(rs_row);
        rsq.push_back(rq_row);
    }
    j = json{{"S", S},           {"A", A},
             {"n", n},           {"transition_counts", trans},
             {"reward_sum", rsum}, {"reward_sq_sum", rsq}};
}

void from_json(const json& j, SufficientStats& stats) {
    const int S = j.at("S").get<int>();
    const int A = j.at("A").get<int>();
    stats = SufficientStats(S, A);
    for (int s = 0; s < S; ++s) {
        for (int a = 0; a < A; ++a) {
            const std::size_t sa = static_cast<std::size_t>(s) * A + a;
            stats.visits[sa] = j.at("n").at(s).at(a).get<long long>();
            for (int sp = 0; sp < S; ++sp)
                stats.transition_counts[sa * S + sp] =
                    j.at("transition_counts").at(s).at(a).at(sp).get<long long>();
            stats.reward_sum[sa] = j.at("reward_sum").at(s).at(a).get<double>();
            stats.reward_sq_sum[sa] = j.at("reward_sq_sum").at(s).at(a).get<double>();
        }
    }
    if (!stats.consistent())
        throw std::invalid_argument("SufficientStats: inconsistent checkpoint");
}

void to_json(json& j, const ValueBracket& bracket) {
    j = json{{"upper", bracket.upper}, {"lower", bracket.lower},
             {"policy", bracket.policy}};
}

void from_json(const json& j, ValueBracket& bracket) {
    j.at("upper").get_to(bracket.upper);
    j.at("lower").get_to(bracket.lower);
    j.at("policy").get_to(bracket.policy);
}

json diagnostics_json(const MdpDiagnostics& d, const BoundValues& b,
                      const BonusConstants& c) {
    return json{{"environmental_norm", d.environmental_norm},
                {"max_return", d.max_return},
                {"successor_range", d.successor_range},
                {"value_range", d.value_range},
                {"bound_problem_dep", b.problem_dependent},
                {"bound_max_return", b.max_return_term},
                {"bound_worst_case", b.worst_case},
                {"constants",
                 json{{"delta_prime", c.delta_prime},
                      {"log_factor", c.log_factor},
                      {"b_p", c.b_p},
                      {"b_v", c.b_v},
                      {"j", c.j},
                      {"horizon", c.horizon},
                      {"total_steps", c.total_steps}}}};
}

} // namespace euler
