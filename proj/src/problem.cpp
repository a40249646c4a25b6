#include "simr/problem.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "simr/errors.hpp"
#include "simr/kernels.hpp"
#include "simr/rng.hpp"

namespace simr {

GridFunction step_function(std::size_t n, double midpoint_value) {
    if (n < 2) throw ConfigError("step_function: need at least 2 grid points");
    GridFunction u = GridFunction::zeros(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid_point(i, n);
        if (x < 0.5)
            u[i] = 0.0;
        else if (x > 0.5)
            u[i] = 1.0;
        else
            u[i] = midpoint_value;
    }
    return u;
}

IntegralProblem::IntegralProblem(std::size_t n, double midpoint_value)
    : Operator(1.0 + std::sqrt(2.0 / std::numbers::pi), std::nullopt), n_(n) {
    if (n < 2) throw ConfigError("integral problem: need at least 2 grid points");
    kernel_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = grid_point(i, n);
        for (std::size_t j = 0; j < n; ++j) {
            kernel_[i * n + j] = trapezoid_weight(j, n) * std::exp(-std::abs(xi - grid_point(j, n)));
        }
    }
    u_exact_ = step_function(n, midpoint_value);
    f_exact_ = apply(u_exact_);
}

GridFunction IntegralProblem::apply(const GridFunction& u) const {
    if (u.size() != n_)
        throw DimensionError("integral problem: input length " + std::to_string(u.size()) +
                             " does not match grid size " + std::to_string(n_));
    GridFunction out = GridFunction::zeros(n_);
    kernels::matvec(kernel_.data(), n_, n_, u.span(), out.span());
    GridFunction nl = GridFunction::zeros(n_);
    kernels::arctan3(u.span(), nl.span());
    for (std::size_t i = 0; i < n_; ++i) out[i] += nl[i];
    return out;
}

GridFunction IntegralProblem::derivative_apply(const GridFunction& u,
                                               const GridFunction& h) const {
    if (u.size() != n_ || h.size() != n_)
        throw DimensionError("integral problem: derivative input length mismatch");
    GridFunction out = GridFunction::zeros(n_);
    kernels::matvec(kernel_.data(), n_, n_, h.span(), out.span());
    GridFunction nl = GridFunction::zeros(n_);
    kernels::arctan3_derivative(u.span(), h.span(), nl.span());
    for (std::size_t i = 0; i < n_; ++i) out[i] += nl[i];
    return out;
}

std::shared_ptr<const IntegralProblem> build_integral_problem(std::size_t n,
                                                              double midpoint_value) {
    return std::make_shared<IntegralProblem>(n, midpoint_value);
}

std::pair<GridFunction, NoiseSpec> make_noise(const GridFunction& f, NoiseModel model,
                                              double delta_rel, std::uint64_t seed,
                                              NormMode mode) {
    if (!(delta_rel > 0.0)) throw ConfigError("make_noise: delta_rel must be positive");
    const double f_norm = norm(f, mode);
    if (!(f_norm > 0.0)) throw ConfigError("make_noise: data must be nonzero");

    const std::size_t n = f.size();
    NoiseSpec spec;
    spec.model = model;
    spec.delta_rel = delta_rel;
    spec.seed_used = seed;

    GridFunction noise;
    double noise_norm = 0.0;
    const int max_redraws = 8;
    for (int attempt = 0;; ++attempt) {
        if (model == NoiseModel::Gaussian) {
            Rng rng(spec.seed_used);
            noise = rng.normal_vector(n);
        } else {
            noise = GridFunction::zeros(n);
            for (std::size_t i = 0; i < n; ++i)
                noise[i] = std::sin(3.0 * std::numbers::pi * grid_point(i, n));
        }
        noise_norm = norm(noise, mode);
        // A profile at roundoff scale would turn kappa into a pure noise
        // amplifier; treat it as a zero draw.
        if (noise_norm > 1e-10 * std::sqrt(static_cast<double>(n))) break;
        if (model == NoiseModel::Sinusoid)
            throw ConfigError("make_noise: sinusoid profile vanishes on this grid (N = " +
                              std::to_string(n) + ")");
        if (attempt >= max_redraws)
            throw ConfigError("make_noise: zero-norm noise after redraws");
        spec.seed_used += 1;
        spec.redraws += 1;
    }

    spec.kappa = delta_rel * f_norm / noise_norm;
    spec.delta = delta_rel * f_norm;
    GridFunction f_delta = f;
    for (std::size_t i = 0; i < n; ++i) f_delta[i] += spec.kappa * noise[i];
    return {std::move(f_delta), spec};
}

} // namespace simr
