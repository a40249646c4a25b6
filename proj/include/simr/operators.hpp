#ifndef SIMR_OPERATORS_HPP
#define SIMR_OPERATORS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "simr/grid.hpp"

namespace simr {

/// Evaluable nonlinear map F on grid functions, carrying an upper bound s on
/// the reciprocal of its inverse-monotonicity constant:
///     <F(u)-F(v), u-v>  >=  (1/s) * ||F(u)-F(v)||^2
/// valid on the ball B(0, R) (R absent means the bound is global). Subclasses
/// may additionally provide the derivative action h -> F'(u)h.
///
/// Instances are immutable after construction; apply/derivative_apply must be
/// safe to call concurrently.
class Operator {
public:
    virtual ~Operator() = default;

    virtual std::size_t dimension() const = 0;
    virtual GridFunction apply(const GridFunction& u) const = 0;

    virtual bool has_derivative() const { return false; }
    virtual GridFunction derivative_apply(const GridFunction& u, const GridFunction& h) const;

    /// Upper bound on sigma^{-1}; this is the quantity entering the step-size rule.
    double sigma_inverse_bound() const noexcept { return sigma_inverse_; }

    /// Radius of the ball on which sigma_inverse_bound is certified; nullopt = global.
    std::optional<double> ball_radius() const noexcept { return ball_radius_; }

protected:
    Operator(double sigma_inverse, std::optional<double> ball_radius)
        : sigma_inverse_(sigma_inverse), ball_radius_(ball_radius) {}

private:
    double sigma_inverse_;
    std::optional<double> ball_radius_;
};

using OperatorHandle = std::shared_ptr<const Operator>;

/// Diagonal selfadjoint operator (Au)_i = lambda_i u_i with lambda_1 >= ... >= 0.
/// Inverse monotone with sigma^{-1} = lambda_1, globally.
class DiagonalOperator final : public Operator {
public:
    explicit DiagonalOperator(std::vector<double> eigenvalues)
        : DiagonalOperator(prepare(std::move(eigenvalues))) {}

    std::size_t dimension() const override { return eigenvalues_.size(); }
    GridFunction apply(const GridFunction& u) const override;
    bool has_derivative() const override { return true; }
    GridFunction derivative_apply(const GridFunction& u, const GridFunction& h) const override;

    const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }

    /// Set when the constructor had to sort the input spectrum.
    bool input_was_unsorted() const noexcept { return input_was_unsorted_; }

private:
    struct Prepared {
        std::vector<double> values;
        bool was_unsorted;
    };
    static Prepared prepare(std::vector<double> values);
    explicit DiagonalOperator(Prepared p)
        : Operator(p.values.front(), std::nullopt),
          eigenvalues_(std::move(p.values)),
          input_was_unsorted_(p.was_unsorted) {}

    std::vector<double> eigenvalues_;
    bool input_was_unsorted_ = false;
};

/// Builds the diagonal operator above. Throws InvalidOperatorError when the
/// largest eigenvalue is not positive.
std::shared_ptr<const DiagonalOperator> make_linear_spd(std::vector<double> eigenvalues);

/// Result of sampling the inverse-monotonicity inequality on random pairs.
struct SigmaCheckReport {
    std::size_t samples_tested = 0;
    std::size_t violations = 0;
    /// Minimum over samples of <dF, du> - sigma*||dF||^2.
    double worst_margin = 0.0;
    /// Offending (u, v) pairs, in sample order, when violations > 0.
    std::vector<std::pair<GridFunction, GridFunction>> violating_pairs;
};

/// Draws sample_count pairs (u, v) uniformly from B(0, radius) with the given
/// seed and evaluates the margin <F(u)-F(v), u-v> - sigma*||F(u)-F(v)||^2.
/// A sample counts as a violation when its margin falls below
/// -tolerance*(1 + ||F(u)-F(v)||^2); smaller excursions are attributed to
/// roundoff, since the inequality is tight for linear operators at
/// sigma = 1/lambda_max. Deterministic for a fixed seed.
SigmaCheckReport check_sigma_inverse(const Operator& op, double sigma, double radius,
                                     std::size_t sample_count, std::uint64_t seed,
                                     double tolerance = 1e-10);

/// For each eps returns ||(F(u+eps*h) - F(u))/eps - F'(u)h|| / max(1, ||F'(u)h||).
/// The caller asserts first-order decay. Throws UnsupportedOperationError when
/// the operator has no derivative action.
std::vector<double> derivative_finite_difference_check(const Operator& op,
                                                       const GridFunction& u,
                                                       const GridFunction& h,
                                                       std::span<const double> eps_list);

} // namespace simr

#endif // SIMR_OPERATORS_HPP
