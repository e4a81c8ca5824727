#include "euler/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace euler {

std::uint64_t Rng::next_u64() {
    // SplitMix64 (Steele, Lea, Flood 2014).
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int Rng::next_index(std::span<const double> probs) {
    double u = next_double();
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) return static_cast<int>(i);
    }
    // u can land past the accumulated mass through rounding; return the last
    // entry with positive probability.
    for (std::size_t i = probs.size(); i-- > 0;) {
        if (probs[i] > 0.0) return static_cast<int>(i);
    }
    throw std::invalid_argument("next_index: probability vector has no mass");
}

double Rng::next_normal() {
    double u1 = next_double();
    double u2 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double Rng::next_gamma(double shape) {
    if (shape <= 0.0) throw std::invalid_argument("next_gamma: shape must be positive");
    if (shape < 1.0) {
        // Boost to shape+1 and rescale by U^{1/shape}.
        double u = next_double();
        while (u <= 0.0) u = next_double();
        return next_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = next_normal();
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        double u = next_double();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

std::vector<double> Rng::next_dirichlet(int dim, double concentration) {
    if (dim < 1) throw std::invalid_argument("next_dirichlet: dim must be positive");
    if (concentration <= 0.0)
        throw std::invalid_argument("next_dirichlet: concentration must be positive");
    std::vector<double> out(dim);
    double total = 0.0;
    for (int i = 0; i < dim; ++i) {
        out[i] = next_gamma(concentration);
        total += out[i];
    }
    if (total <= 0.0) {
        // Vanishingly unlikely; fall back to uniform so the row stays a simplex.
        for (int i = 0; i < dim; ++i) out[i] = 1.0 / dim;
        return out;
    }
    for (int i = 0; i < dim; ++i) out[i] /= total;
    return out;
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t stream_id) {
    // Hash the pair (seed, stream_id) into a fresh starting counter.
    Rng mixer(seed ^ (0x6a09e667f3bcc909ULL + stream_id * 0x9e3779b97f4a7c15ULL));
    std::uint64_t derived = mixer.next_u64();
    return Rng(derived);
}

} // namespace euler
