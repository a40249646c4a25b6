#ifndef SIMR_GRID_HPP
#define SIMR_GRID_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "simr/errors.hpp"

namespace simr {

/// Real-valued function sampled on the uniform grid x_i = i/(N-1) over [0,1].
/// Thin wrapper over a contiguous buffer; all arithmetic lives in simr::kernels.
class GridFunction {
public:
    GridFunction() = default;
    explicit GridFunction(std::vector<double> values) : values_(std::move(values)) {}

    static GridFunction zeros(std::size_t n) { return GridFunction(std::vector<double>(n, 0.0)); }
    static GridFunction constant(std::size_t n, double value) {
        return GridFunction(std::vector<double>(n, value));
    }

    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    double operator[](std::size_t i) const noexcept { return values_[i]; }
    double& operator[](std::size_t i) noexcept { return values_[i]; }

    const std::vector<double>& values() const noexcept { return values_; }
    std::vector<double>& values() noexcept { return values_; }

    std::span<const double> span() const noexcept { return values_; }
    std::span<double> span() noexcept { return values_; }

    const double* data() const noexcept { return values_.data(); }
    double* data() noexcept { return values_.data(); }

    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

    bool all_finite() const noexcept;

    bool operator==(const GridFunction& other) const noexcept { return values_ == other.values_; }

private:
    std::vector<double> values_;
};

/// Grid coordinate of sample i on an N-point grid: i/(N-1).
double grid_point(std::size_t i, std::size_t n);

/// Trapezoid quadrature weight of sample i: dx/2 at the endpoints, dx inside.
double trapezoid_weight(std::size_t i, std::size_t n);

/// Inner-product convention used throughout a run. Euclidean sums raw squares;
/// TrapezoidWeighted applies the quadrature weights, so the constant-1 function
/// has norm 1 on every grid.
enum class NormMode {
    Euclidean,
    TrapezoidWeighted,
};

double inner(const GridFunction& u, const GridFunction& v, NormMode mode = NormMode::Euclidean);
double norm(const GridFunction& u, NormMode mode = NormMode::Euclidean);

} // namespace simr

#endif // SIMR_GRID_HPP
