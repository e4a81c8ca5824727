#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "euler/mdp.hpp"

namespace euler {

/**
 * Shared constants parameterizing every confidence bonus. One unified log
 * factor ln(4 S A T / delta') is used everywhere; the per-event failure
 * budget is delta' = delta / 7 so seven concentration events hold jointly
 * with probability at least 1 - delta.
 */
struct BonusConstants {
    double delta_prime = 0.0; // delta / 7
    double log_factor = 0.0;  // ln(4 S A T / delta')
    double b_p = 0.0;         // H sqrt(2 log_factor): empirical-vs-true leading-term shift
    double b_v = 0.0;         // sqrt(2 log_factor): Lipschitz constant in the value argument
    double j = 0.0;           // H log_factor / 3: cap on the 1/n coefficient
    int horizon = 0;
    double total_steps = 0.0; // T = episodes * H, fixed up front

    static BonusConstants make(int num_states, int num_actions, int horizon,
                               long long episodes, double delta);
};

/// sqrt(sum_i p_i x_i^2): the 2-norm of x under the weights p.
double weighted_two_norm(std::span<const double> p, std::span<const double> x);

/// Variance of x under p, clamped at zero against rounding.
double variance_under(std::span<const double> p, std::span<const double> x);

/// Bernstein deviation bound for |(p_hat - p)^T v| at visit count n >= 1:
/// sqrt(2 Var_p(v) L / n) + H L / (3n).
double bernstein_phi(std::span<const double> p, std::span<const double> v, double n,
                     const BonusConstants& c);

/// Empirical-Bernstein reward bonus: sqrt(2 sample_variance L / n) + 7 L / (3n).
double reward_bonus(double sample_variance, double n, const BonusConstants& c);

/**
 * Composite transition bonus: the base interval phi plus the correction
 * (4J + B_p) / n + B_v ||upper - lower||_{2,p_hat} / sqrt(n) restoring
 * optimism when phi is evaluated with estimated quantities.
 */
double transition_bonus(double phi_value, double n, double bracket_norm,
                        const BonusConstants& c);

/// Worst-case baseline bound H sqrt(L / (2n)), independent of p and v.
double hoeffding_phi(double n, const BonusConstants& c);

/**
 * Confidence interval on |(p_hat - p)^T v| of the functional form
 * g(p, v)/sqrt(n) + j/n. Implementations expose the leading coefficient g,
 * the cap on the 1/n coefficient, and the two shift constants:
 *   value_lipschitz (B_v):  |g(p,v1) - g(p,v2)| <= B_v ||v1 - v2||_{2,p}
 *   estimate_shift  (B_p):  |g(p_hat,v) - g(p,v)| <= B_p / sqrt(n) w.h.p.
 */
class ConfidenceInterval {
  public:
    virtual ~ConfidenceInterval() = default;

    virtual double g(std::span<const double> p, std::span<const double> v) const = 0;
    virtual double j_max() const = 0;
    virtual double value_lipschitz() const = 0;
    virtual double estimate_shift() const = 0;

    double phi(std::span<const double> p, std::span<const double> v, double n) const;

    /// phi plus the correction terms, using this interval's own constants.
    double combined_bonus(double phi_value, double n, double bracket_norm) const;
};

/// Bernstein instantiation: g = sqrt(2 L Var_p(v)), j = H L / 3.
class BernsteinInterval final : public ConfidenceInterval {
  public:
    explicit BernsteinInterval(const BonusConstants& c) : c_(c) {}
    double g(std::span<const double> p, std::span<const double> v) const override;
    double j_max() const override { return c_.j; }
    double value_lipschitz() const override { return c_.b_v; }
    double estimate_shift() const override { return c_.b_p; }

  private:
    BonusConstants c_;
};

/// Hoeffding baseline: g = H sqrt(L/2) regardless of p and v, so no
/// correction terms are needed (both shift constants are zero).
class HoeffdingInterval final : public ConfidenceInterval {
  public:
    explicit HoeffdingInterval(const BonusConstants& c) : c_(c) {}
    double g(std::span<const double>, std::span<const double>) const override;
    double j_max() const override { return 0.0; }
    double value_lipschitz() const override { return 0.0; }
    double estimate_shift() const override { return 0.0; }

  private:
    BonusConstants c_;
};

enum class CoverageTarget {
    transition_value, // |(p_hat - p)^T v| vs bernstein_phi(p, v, n)
    reward_mean,      // |mean_hat - mean| vs reward_bonus(sample_var, n)
};

struct CoverageSpec {
    CoverageTarget target = CoverageTarget::transition_value;
    std::vector<double> p;      // true next-state distribution
    std::vector<double> values; // value vector weighting the next states
    RewardModel reward;         // true reward distribution
};

/// Monte-Carlo check of interval coverage: fraction of seeded trials in which
/// the true quantity escapes the interval. Expected at most delta' per event.
double coverage_probe(const CoverageSpec& spec, int trials, int n,
                      const BonusConstants& c, std::uint64_t seed);

} // namespace euler
