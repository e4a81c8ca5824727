#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace euler {

/**
 * Deterministic 64-bit generator (SplitMix64): the state advances by a fixed
 * Weyl increment and the output is an avalanche hash of the counter, so
 * identical seeds give identical streams on every platform.
 *
 * Seeding discipline used throughout: an experiment owns a single seed, and
 * every episode k draws from the derived stream `Rng::stream(seed, k)`.
 * Nothing in the library touches global randomness.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();

    /// Uniform draw in [0, 1) with 53 random bits.
    double next_double();

    bool next_bernoulli(double p) { return next_double() < p; }

    /// Inverse-CDF draw from a probability vector (one uniform consumed).
    int next_index(std::span<const double> probs);

    /// Standard normal via Box-Muller (two uniforms consumed).
    double next_normal();

    /// Gamma(shape, 1) via Marsaglia-Tsang; shape > 0.
    double next_gamma(double shape);

    /// Dirichlet(concentration * 1) sample of the given dimension.
    std::vector<double> next_dirichlet(int dim, double concentration);

    /// Derives an independent sub-stream, e.g. one per episode.
    static Rng stream(std::uint64_t seed, std::uint64_t stream_id);

  private:
    std::uint64_t state_;
};

} // namespace euler
