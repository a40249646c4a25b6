#include "simr/grid.hpp"

#include <cmath>
#include <string>

#include "simr/kernels.hpp"

namespace simr {

bool GridFunction::all_finite() const noexcept {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

double grid_point(std::size_t i, std::size_t n) {
    return static_cast<double>(i) / static_cast<double>(n - 1);
}

double trapezoid_weight(std::size_t i, std::size_t n) {
    const double dx = 1.0 / static_cast<double>(n - 1);
    return (i == 0 || i + 1 == n) ? 0.5 * dx : dx;
}

namespace {

void require_same_length(const GridFunction& u, const GridFunction& v) {
    if (u.size() != v.size())
        throw DimensionError("inner: length mismatch (" + std::to_string(u.size()) +
                             " vs " + std::to_string(v.size()) + ")");
}

} // namespace

double inner(const GridFunction& u, const GridFunction& v, NormMode mode) {
    require_same_length(u, v);
    if (mode == NormMode::Euclidean) return kernels::dot(u.span(), v.span());
    const std::size_t n = u.size();
    if (n < 2)
        throw DimensionError("inner: trapezoid weights need at least 2 grid points");
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = trapezoid_weight(i, n);
    return kernels::dot_weighted(u.span(), v.span(), w);
}

double norm(const GridFunction& u, NormMode mode) {
    return std::sqrt(inner(u, u, mode));
}

} // namespace simr
