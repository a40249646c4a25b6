#ifndef SIMR_RNG_HPP
#define SIMR_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "simr/grid.hpp"

namespace simr {

/// Seeded random source used for noise generation and ball sampling.
/// mt19937_64 with an explicit Box-Muller transform, so draws depend only on
/// the seed and the call sequence, not on the standard library's distribution
/// implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; draws two uniforms on every other call.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // 1 - uniform() lies in (0, 1], keeping the log finite.
        const double r = std::sqrt(-2.0 * std::log(1.0 - uniform()));
        const double t = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    GridFunction normal_vector(std::size_t n) {
        GridFunction g = GridFunction::zeros(n);
        for (std::size_t i = 0; i < n; ++i) g[i] = normal();
        return g;
    }

    /// Point drawn uniformly from the Euclidean ball of the given radius:
    /// normalized Gaussian direction scaled by radius * U^(1/n).
    GridFunction ball_point(std::size_t n, double radius) {
        GridFunction g = normal_vector(n);
        const double len = norm(g, NormMode::Euclidean);
        const double mag =
            len > 0.0 ? radius * std::pow(uniform(), 1.0 / static_cast<double>(n)) / len : 0.0;
        for (std::size_t i = 0; i < n; ++i) g[i] *= mag;
        return g;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace simr

#endif // SIMR_RNG_HPP
