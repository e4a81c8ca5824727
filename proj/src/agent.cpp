#include "euler/agent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace euler {

SufficientStats::SufficientStats(int S, int A)
    : num_states(S),
      num_actions(A),
      visits(static_cast<std::size_t>(S) * A, 0),
      transition_counts(static_cast<std::size_t>(S) * A * S, 0),
      reward_sum(static_cast<std::size_t>(S) * A, 0.0),
      reward_sq_sum(static_cast<std::size_t>(S) * A, 0.0) {
    if (S < 1 || A < 1) throw std::invalid_argument("SufficientStats: S and A must be positive");
}

void SufficientStats::record(int s, int a, double r, int s_next) {
    if (s < 0 || s >= num_states || a < 0 || a >= num_actions || s_next < 0 ||
        s_next >= num_states)
        throw std::invalid_argument("SufficientStats::record: index out of range");
    if (!(r >= 0.0 && r <= 1.0))
        throw std::invalid_argument("SufficientStats::record: reward outside [0, 1]");
    const std::size_t sa = static_cast<std::size_t>(s) * num_actions + a;
    visits[sa] += 1;
    transition_counts[sa * num_states + s_next] += 1;
    reward_sum[sa] += r;
    reward_sq_sum[sa] += r * r;
}

bool SufficientStats::consistent() const {
    for (int s = 0; s < num_states; ++s) {
        for (int a = 0; a < num_actions; ++a) {
            const std::size_t sa = static_cast<std::size_t>(s) * num_actions + a;
            long long total = 0;
            for (int sp = 0; sp < num_states; ++sp)
                total += transition_counts[sa * num_states + sp];
            if (total != visits[sa]) return false;
            if (visits[sa] > 0) {
                double n = static_cast<double>(visits[sa]);
                if (reward_sq_sum[sa] < reward_sum[sa] * reward_sum[sa] / n - 1e-9)
                    return false;
            }
        }
    }
    return true;
}

ValueBracket plan(const SufficientStats& stats, const BonusConstants& c,
                  const ConfidenceInterval& interval, const PlanOptions& options,
                  PlanCounters* counters) {
    const int S = stats.num_states, A = stats.num_actions, H = c.horizon;
    if (S < 1 || A < 1) throw std::invalid_argument("plan: empty statistics");
    if (!stats.consistent()) throw std::invalid_argument("plan: inconsistent statistics");

    ValueBracket out;
    out.upper.assign(H + 1, std::vector<double>(S, 0.0));
    out.lower.assign(H + 1, std::vector<double>(S, 0.0));
    out.policy.assign(H, std::vector<int>(S, 0));

    std::vector<double> p_hat(S, 0.0);
    std::vector<double> diff(S, 0.0);
    std::vector<double> q(A, 0.0);
    std::vector<double> norm_by_action(A, 0.0);

    for (int t = H - 1; t >= 0; --t) {
        const auto& upper_next = out.upper[t + 1];
        const auto& lower_next = out.lower[t + 1];
        for (int s = 0; s < S; ++s) diff[s] = upper_next[s] - lower_next[s];

        double cap = static_cast<double>(H - t);
        if (options.q_cap) cap = std::min(cap, *options.q_cap);

        for (int s = 0; s < S; ++s) {
            for (int a = 0; a < A; ++a) {
                if (counters) counters->bonus_evaluations += 1;
                const std::size_t sa = static_cast<std::size_t>(s) * A + a;
                const long long n = stats.visits[sa];
                if (n == 0) {
                    q[a] = cap;
                    norm_by_action[a] = 0.0;
                    continue;
                }
                const double dn = static_cast<double>(n);
                for (int sp = 0; sp < S; ++sp)
                    p_hat[sp] = static_cast<double>(
                                    stats.transition_counts[sa * S + sp]) /
                                dn;
                const double r_hat = stats.reward_sum[sa] / dn;
                const double var_hat = std::max(
                    0.0, stats.reward_sq_sum[sa] / dn - r_hat * r_hat);
                const double br = reward_bonus(var_hat, dn, c);
                const double norm = weighted_two_norm(p_hat, diff);
                norm_by_action[a] = norm;
                double backup = 0.0;
                for (int sp = 0; sp < S; ++sp) backup += p_hat[sp] * upper_next[sp];
                const double bb = interval.combined_bonus(
                    interval.phi(p_hat, upper_next, dn), dn, norm);
                q[a] = std::min(cap, r_hat + br + backup + bb);
            }

            int best = 0;
            for (int a = 1; a < A; ++a)
                if (q[a] > q[best]) best = a;
            out.policy[t][s] = best;
            out.upper[t][s] = q[best];

            const std::size_t sa = static_cast<std::size_t>(s) * A + best;
            const long long n = stats.visits[sa];
            if (n == 0) {
                out.lower[t][s] = 0.0;
                continue;
            }
            const double dn = static_cast<double>(n);
            for (int sp = 0; sp < S; ++sp)
                p_hat[sp] =
                    static_cast<double>(stats.transition_counts[sa * S + sp]) / dn;
            const double r_hat = stats.reward_sum[sa] / dn;
            const double var_hat =
                std::max(0.0, stats.reward_sq_sum[sa] / dn - r_hat * r_hat);
            const double br = reward_bonus(var_hat, dn, c);
            double backup = 0.0;
            for (int sp = 0; sp < S; ++sp) backup += p_hat[sp] * lower_next[sp];
            const double bb = interval.combined_bonus(
                interval.phi(p_hat, lower_next, dn), dn, norm_by_action[best]);
            out.lower[t][s] = std::max(0.0, r_hat - br + backup - bb);
        }
    }
    return out;
}

int act(const ValueBracket& bracket, int state, int step) {
    if (step < 0 || step >= static_cast<int>(bracket.policy.size()))
        throw std::out_of_range("act: step out of range");
    if (state < 0 || state >= static_cast<int>(bracket.policy[step].size()))
        throw std::out_of_range("act: state out of range");
    return bracket.policy[step][state];
}

double bracket_width(const ValueBracket& bracket, std::span<const double> weights) {
    if (bracket.upper.empty() || bracket.upper[0].size() != weights.size())
        throw std::invalid_argument("bracket_width: weights have wrong size");
    double width = 0.0;
    for (std::size_t s = 0; s < weights.size(); ++s)
        width += weights[s] * (bracket.upper[0][s] - bracket.lower[0][s]);
    return width;
}

} // namespace euler
