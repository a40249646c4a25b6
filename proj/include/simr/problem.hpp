#ifndef SIMR_PROBLEM_HPP
#define SIMR_PROBLEM_HPP

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "simr/grid.hpp"
#include "simr/operators.hpp"

namespace simr {

/// Piecewise-constant step on the grid: 0 for x < 0.5, 1 for x > 0.5. A grid
/// point landing exactly on 0.5 takes midpoint_value (default 1, the right
/// limit), which keeps even and odd grids consistent.
GridFunction step_function(std::size_t n, double midpoint_value = 1.0);

/// Discretized integral-equation testbed
///     F(u)(x) = \int_0^1 e^{-|x-y|} u(y) dy + atan(u(x))^3
/// on the uniform N-point grid, with the integral replaced by the trapezoid
/// rule applied row-wise: K_ij = w_j * e^{-|x_i - x_j|} (Nystrom form).
/// The operator is inverse monotone with sigma^{-1} = 1 + sqrt(2/pi) globally.
class IntegralProblem final : public Operator {
public:
    explicit IntegralProblem(std::size_t n, double midpoint_value = 1.0);

    std::size_t dimension() const override { return n_; }
    GridFunction apply(const GridFunction& u) const override;
    bool has_derivative() const override { return true; }

    /// F'(u)h = K h + 3 atan(u)^2 / (1 + u^2) * h, pointwise in the second term.
    GridFunction derivative_apply(const GridFunction& u, const GridFunction& h) const override;

    std::size_t grid_size() const noexcept { return n_; }
    /// Row-major N x N kernel matrix.
    const std::vector<double>& kernel_matrix() const noexcept { return kernel_; }
    const GridFunction& exact_solution() const noexcept { return u_exact_; }
    /// F(exact_solution), recomputed at construction.
    const GridFunction& exact_data() const noexcept { return f_exact_; }

private:
    std::size_t n_;
    std::vector<double> kernel_;
    GridFunction u_exact_;
    GridFunction f_exact_;
};

std::shared_ptr<const IntegralProblem> build_integral_problem(std::size_t n,
                                                              double midpoint_value = 1.0);

enum class NoiseModel {
    Gaussian,
    Sinusoid,
};

/// How a noisy right-hand side was produced: f_delta = f + kappa * f_noise with
/// kappa chosen so that ||f_delta - f|| / ||f|| equals delta_rel exactly.
struct NoiseSpec {
    NoiseModel model = NoiseModel::Gaussian;
    double delta_rel = 0.0;
    double delta = 0.0;
    double kappa = 0.0;
    std::uint64_t seed_used = 0;
    int redraws = 0;
};

/// Builds f_delta from f. Gaussian noise is a standard-normal vector from the
/// seeded generator; Sinusoid is the deterministic sin(3 pi x) profile. A
/// zero-norm draw is redrawn with an incremented seed (recorded in the
/// returned NoiseSpec); a deterministic zero-norm profile is an error.
std::pair<GridFunction, NoiseSpec> make_noise(const GridFunction& f, NoiseModel model,
                                              double delta_rel, std::uint64_t seed,
                                              NormMode mode = NormMode::Euclidean);

} // namespace simr

#endif // SIMR_PROBLEM_HPP
