#include "euler/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace euler {

namespace {

constexpr double kSimplexTol = 1e-9;

void check_simplex(const std::vector<double>& p, const std::string& what) {
    double total = 0.0;
    for (double v : p) {
        if (v < 0.0) throw std::invalid_argument(what + ": negative probability entry");
        total += v;
    }
    if (std::abs(total - 1.0) > kSimplexTol)
        throw std::invalid_argument(what + ": probabilities sum to " + std::to_string(total));
}

} // namespace

void TabularMDP::validate() const {
    if (num_states < 1 || num_actions < 1 || horizon < 1)
        throw std::invalid_argument("TabularMDP: S, A and H must be positive");
    if (static_cast<int>(transitions.size()) != num_states ||
        static_cast<int>(rewards.size()) != num_states)
        throw std::invalid_argument("TabularMDP: per-state table has wrong size");
    for (int s = 0; s < num_states; ++s) {
        if (static_cast<int>(transitions[s].size()) != num_actions ||
            static_cast<int>(rewards[s].size()) != num_actions)
            throw std::invalid_argument("TabularMDP: per-action table has wrong size");
        for (int a = 0; a < num_actions; ++a) {
            const auto& row = transitions[s][a];
            if (static_cast<int>(row.size()) != num_states)
                throw std::invalid_argument("TabularMDP: transition row has wrong size");
            check_simplex(row, "transition row");
            const RewardModel& r = rewards[s][a];
            if (r.mean < 0.0 || r.mean > 1.0)
                throw std::invalid_argument("TabularMDP: reward mean outside [0, 1]");
            if (r.support_max() > 1.0 || r.mean > r.support_max())
                throw std::invalid_argument("TabularMDP: reward support outside [mean, 1]");
        }
    }
    if (static_cast<int>(start_states.size()) != num_states)
        throw std::invalid_argument("TabularMDP: start distribution has wrong size");
    check_simplex(start_states, "start distribution");
}

Solution optimal_values(const TabularMDP& mdp) {
    const int S = mdp.num_states, A = mdp.num_actions, H = mdp.horizon;
    Solution sol;
    sol.values.assign(H + 1, std::vector<double>(S, 0.0));
    sol.policy.assign(H, std::vector<int>(S, 0));
    for (int t = H - 1; t >= 0; --t) {
        for (int s = 0; s < S; ++s) {
            double best = -std::numeric_limits<double>::infinity();
            int best_a = 0;
            for (int a = 0; a < A; ++a) {
                double q = mdp.rewards[s][a].mean;
                const auto& row = mdp.transitions[s][a];
                for (int sp = 0; sp < S; ++sp) q += row[sp] * sol.values[t + 1][sp];
                if (q > best) {
                    best = q;
                    best_a = a;
                }
            }
            sol.values[t][s] = best;
            sol.policy[t][s] = best_a;
        }
    }
    return sol;
}

ValueTable policy_values(const TabularMDP& mdp, const PolicyTable& policy) {
    const int S = mdp.num_states, H = mdp.horizon;
    if (static_cast<int>(policy.size()) != H)
        throw std::invalid_argument("policy_values: policy has wrong horizon");
    ValueTable values(H + 1, std::vector<double>(S, 0.0));
    for (int t = H - 1; t >= 0; --t) {
        if (static_cast<int>(policy[t].size()) != S)
            throw std::invalid_argument("policy_values: policy row has wrong size");
        for (int s = 0; s < S; ++s) {
            int a = policy[t][s];
            if (a < 0 || a >= mdp.num_actions)
                throw std::invalid_argument("policy_values: action index out of range");
            double v = mdp.rewards[s][a].mean;
            const auto& row = mdp.transitions[s][a];
            for (int sp = 0; sp < S; ++sp) v += row[sp] * values[t + 1][sp];
            values[t][s] = v;
        }
    }
    return values;
}

namespace {

double next_state_variance(const std::vector<double>& p, const std::vector<double>& v) {
    double mean = 0.0, second = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        mean += p[i] * v[i];
        second += p[i] * v[i] * v[i];
    }
    return std::max(0.0, second - mean * mean);
}

} // namespace

double environmental_norm(const TabularMDP& mdp) {
    const Solution sol = optimal_values(mdp);
    double worst = 0.0;
    for (int t = 0; t < mdp.horizon; ++t) {
        for (int s = 0; s < mdp.num_states; ++s) {
            for (int a = 0; a < mdp.num_actions; ++a) {
                double var = mdp.rewards[s][a].variance() +
                             next_state_variance(mdp.transitions[s][a], sol.values[t + 1]);
                worst = std::max(worst, var);
            }
        }
    }
    return worst;
}

double max_return(const TabularMDP& mdp) {
    const int S = mdp.num_states, A = mdp.num_actions, H = mdp.horizon;
    std::vector<double> next(S, 0.0), cur(S, 0.0);
    for (int t = H - 1; t >= 0; --t) {
        for (int s = 0; s < S; ++s) {
            double best = 0.0;
            for (int a = 0; a < A; ++a) {
                double succ = 0.0;
                bool found = false;
                const auto& row = mdp.transitions[s][a];
                for (int sp = 0; sp < S; ++sp) {
                    if (row[sp] > 0.0) {
                        succ = found ? std::max(succ, next[sp]) : next[sp];
                        found = true;
                    }
                }
                best = std::max(best, mdp.rewards[s][a].support_max() + succ);
            }
            cur[s] = best;
        }
        std::swap(cur, next);
    }
    return *std::max_element(next.begin(), next.end());
}

double successor_range(const TabularMDP& mdp) {
    const Solution sol = optimal_values(mdp);
    double worst = 0.0;
    for (int t = 0; t < mdp.horizon; ++t) {
        const auto& v_next = sol.values[t + 1];
        for (int s = 0; s < mdp.num_states; ++s) {
            for (int a = 0; a < mdp.num_actions; ++a) {
                const auto& row = mdp.transitions[s][a];
                double lo = std::numeric_limits<double>::infinity();
                double hi = -lo;
                for (int sp = 0; sp < mdp.num_states; ++sp) {
                    if (row[sp] > 0.0) {
                        lo = std::min(lo, v_next[sp]);
                        hi = std::max(hi, v_next[sp]);
                    }
                }
                if (hi >= lo) worst = std::max(worst, hi - lo);
            }
        }
    }
    return worst;
}

MdpDiagnostics compute_diagnostics(const TabularMDP& mdp) {
    const Solution sol = optimal_values(mdp);
    MdpDiagnostics d;
    d.max_return = max_return(mdp);
    double norm = 0.0, range = 0.0;
    for (int t = 0; t < mdp.horizon; ++t) {
        const auto& v_next = sol.values[t + 1];
        for (int s = 0; s < mdp.num_states; ++s) {
            for (int a = 0; a < mdp.num_actions; ++a) {
                const auto& row = mdp.transitions[s][a];
                norm = std::max(norm, mdp.rewards[s][a].variance() +
                                          next_state_variance(row, v_next));
                double lo = std::numeric_limits<double>::infinity();
                double hi = -lo;
                for (int sp = 0; sp < mdp.num_states; ++sp) {
                    if (row[sp] > 0.0) {
                        lo = std::min(lo, v_next[sp]);
                        hi = std::max(hi, v_next[sp]);
                    }
                }
                if (hi >= lo) range = std::max(range, hi - lo);
            }
        }
    }
    d.environmental_norm = norm;
    d.successor_range = range;
    const auto& v1 = sol.values[0];
    d.value_range = *std::max_element(v1.begin(), v1.end()) -
                    *std::min_element(v1.begin(), v1.end());
    return d;
}

BoundValues theoretical_bounds(const TabularMDP& mdp, long long episodes, double delta) {
    if (episodes < 0) throw std::invalid_argument("theoretical_bounds: episodes must be >= 0");
    if (delta <= 0.0 || delta >= 1.0)
        throw std::invalid_argument("theoretical_bounds: delta must be in (0, 1)");
    const double sat = static_cast<double>(mdp.num_states) * mdp.num_actions *
                       static_cast<double>(episodes) * mdp.horizon;
    BoundValues b;
    if (sat == 0.0) return b;
    MdpDiagnostics d = compute_diagnostics(mdp);
    b.problem_dependent = std::sqrt(d.environmental_norm * sat);
    b.max_return_term = d.max_return * std::sqrt(sat);
    b.worst_case = std::sqrt(mdp.horizon * sat);
    return b;
}

} // namespace euler
