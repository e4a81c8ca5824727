#include "euler/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "euler/rng.hpp"

namespace euler {

BonusConstants BonusConstants::make(int num_states, int num_actions, int horizon,
                                    long long episodes, double delta) {
    if (num_states < 1 || num_actions < 1 || horizon < 1)
        throw std::invalid_argument("BonusConstants: S, A and H must be positive");
    if (episodes < 0) throw std::invalid_argument("BonusConstants: episodes must be >= 0");
    if (delta <= 0.0 || delta >= 1.0)
        throw std::invalid_argument("BonusConstants: delta must be in (0, 1)");
    BonusConstants c;
    c.horizon = horizon;
    c.delta_prime = delta / 7.0;
    // A zero-episode run never plans; clamping keeps the log finite.
    c.total_steps = static_cast<double>(std::max<long long>(episodes, 1)) * horizon;
    c.log_factor = std::log(4.0 * num_states * num_actions * c.total_steps / c.delta_prime);
    c.b_p = horizon * std::sqrt(2.0 * c.log_factor);
    c.b_v = std::sqrt(2.0 * c.log_factor);
    c.j = horizon * c.log_factor / 3.0;
    return c;
}

double weighted_two_norm(std::span<const double> p, std::span<const double> x) {
    if (p.size() != x.size())
        throw std::invalid_argument("weighted_two_norm: dimension mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) total += p[i] * x[i] * x[i];
    return std::sqrt(std::max(0.0, total));
}

double variance_under(std::span<const double> p, std::span<const double> x) {
    if (p.size() != x.size())
        throw std::invalid_argument("variance_under: dimension mismatch");
    if (p.empty()) return 0.0;
    // Shifted moments: exact zero on constant vectors, no cancellation blowup.
    const double shift = x[0];
    double mean = 0.0, second = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = x[i] - shift;
        mean += p[i] * d;
        second += p[i] * d * d;
    }
    return std::max(0.0, second - mean * mean);
}

double bernstein_phi(std::span<const double> p, std::span<const double> v, double n,
                     const BonusConstants& c) {
    if (n < 1.0) throw std::invalid_argument("bernstein_phi: requires n >= 1");
    return std::sqrt(2.0 * variance_under(p, v) * c.log_factor / n) +
           c.horizon * c.log_factor / (3.0 * n);
}

double reward_bonus(double sample_variance, double n, const BonusConstants& c) {
    if (sample_variance < 0.0)
        throw std::invalid_argument("reward_bonus: negative sample variance");
    if (n < 1.0) throw std::invalid_argument("reward_bonus: requires n >= 1");
    return std::sqrt(2.0 * sample_variance * c.log_factor / n) +
           7.0 * c.log_factor / (3.0 * n);
}

double transition_bonus(double phi_value, double n, double bracket_norm,
                        const BonusConstants& c) {
    if (n < 1.0) throw std::invalid_argument("transition_bonus: requires n >= 1");
    if (bracket_norm < 0.0)
        throw std::invalid_argument("transition_bonus: negative bracket norm");
    return phi_value + (4.0 * c.j + c.b_p) / n + c.b_v * bracket_norm / std::sqrt(n);
}

double hoeffding_phi(double n, const BonusConstants& c) {
    if (n < 1.0) throw std::invalid_argument("hoeffding_phi: requires n >= 1");
    return c.horizon * std::sqrt(c.log_factor / (2.0 * n));
}

double ConfidenceInterval::phi(std::span<const double> p, std::span<const double> v,
                               double n) const {
    if (n < 1.0) throw std::invalid_argument("ConfidenceInterval::phi: requires n >= 1");
    return g(p, v) / std::sqrt(n) + j_max() / n;
}

double ConfidenceInterval::combined_bonus(double phi_value, double n,
                                          double bracket_norm) const {
    return phi_value + (4.0 * j_max() + estimate_shift()) / n +
           value_lipschitz() * bracket_norm / std::sqrt(n);
}

double BernsteinInterval::g(std::span<const double> p, std::span<const double> v) const {
    return std::sqrt(2.0 * c_.log_factor * variance_under(p, v));
}

double HoeffdingInterval::g(std::span<const double>, std::span<const double>) const {
    return c_.horizon * std::sqrt(c_.log_factor / 2.0);
}

double coverage_probe(const CoverageSpec& spec, int trials, int n,
                      const BonusConstants& c, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("coverage_probe: trials must be >= 1");
    if (n < 1) throw std::invalid_argument("coverage_probe: n must be >= 1");
    int failures = 0;
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
        if (spec.target == CoverageTarget::transition_value) {
            if (spec.p.size() != spec.values.size() || spec.p.empty())
                throw std::invalid_argument("coverage_probe: bad transition spec");
            std::vector<double> counts(spec.p.size(), 0.0);
            for (int i = 0; i < n; ++i) counts[rng.next_index(spec.p)] += 1.0;
            double emp = 0.0, truth = 0.0;
            for (std::size_t s = 0; s < spec.p.size(); ++s) {
                emp += counts[s] / n * spec.values[s];
                truth += spec.p[s] * spec.values[s];
            }
            double width = bernstein_phi(spec.p, spec.values, n, c);
            if (std::abs(emp - truth) > width) ++failures;
        } else {
            double sum = 0.0, sq_sum = 0.0;
            for (int i = 0; i < n; ++i) {
                double r = spec.reward.kind == RewardKind::bernoulli
                               ? (rng.next_bernoulli(spec.reward.mean) ? 1.0 : 0.0)
                               : spec.reward.mean;
                sum += r;
                sq_sum += r * r;
            }
            double mean_hat = sum / n;
            double var_hat = std::max(0.0, sq_sum / n - mean_hat * mean_hat);
            double width = reward_bonus(var_hat, n, c);
            if (std::abs(mean_hat - spec.reward.mean) > width) ++failures;
        }
    }
    return static_cast<double>(failures) / trials;
}

} // namespace euler
