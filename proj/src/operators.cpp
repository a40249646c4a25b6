#include "simr/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "simr/errors.hpp"
#include "simr/kernels.hpp"
#include "simr/rng.hpp"

namespace simr {

GridFunction Operator::derivative_apply(const GridFunction&, const GridFunction&) const {
    throw UnsupportedOperationError("operator has no derivative action");
}

DiagonalOperator::Prepared DiagonalOperator::prepare(std::vector<double> values) {
    if (values.empty()) throw InvalidOperatorError("diagonal operator: empty spectrum");
    bool was_unsorted = false;
    if (!std::is_sorted(values.begin(), values.end(), std::greater<>())) {
        std::sort(values.begin(), values.end(), std::greater<>());
        was_unsorted = true;
    }
    if (!(values.front() > 0.0))
        throw InvalidOperatorError("diagonal operator: largest eigenvalue must be positive");
    if (values.back() < 0.0)
        throw InvalidOperatorError("diagonal operator: negative eigenvalue");
    return {std::move(values), was_unsorted};
}

GridFunction DiagonalOperator::apply(const GridFunction& u) const {
    if (u.size() != eigenvalues_.size())
        throw DimensionError("diagonal operator: input length " + std::to_string(u.size()) +
                             " does not match spectrum length " +
                             std::to_string(eigenvalues_.size()));
    GridFunction out = GridFunction::zeros(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = eigenvalues_[i] * u[i];
    return out;
}

GridFunction DiagonalOperator::derivative_apply(const GridFunction&, const GridFunction& h) const {
    return apply(h);
}

std::shared_ptr<const DiagonalOperator> make_linear_spd(std::vector<double> eigenvalues) {
    return std::make_shared<DiagonalOperator>(std::move(eigenvalues));
}

SigmaCheckReport check_sigma_inverse(const Operator& op, double sigma, double radius,
                                     std::size_t sample_count, std::uint64_t seed,
                                     double tolerance) {
    const std::size_t n = op.dimension();
    SigmaCheckReport report;
    report.samples_tested = sample_count;
    report.worst_margin = std::numeric_limits<double>::infinity();

    std::vector<double> margins(sample_count);
    std::vector<char> violated(sample_count, 0);
    std::vector<std::pair<GridFunction, GridFunction>> pairs(sample_count);
    std::size_t failed_index = sample_count;
    std::string failure;

    // Each sample draws from its own seed so results do not depend on how the
    // loop is scheduled. Evaluation failures may not escape the parallel
    // region; the first one (by sample index) is rethrown below.
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (sample_count >= 64)
#endif
    for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(sample_count); ++si) {
        const std::size_t i = static_cast<std::size_t>(si);
        try {
            Rng rng(seed + 0x9e3779b97f4a7c15ull * (i + 1));
            GridFunction u = rng.ball_point(n, radius);
            GridFunction v = rng.ball_point(n, radius);
            GridFunction fu = op.apply(u);
            GridFunction fv = op.apply(v);
            double df_du = 0.0, df_df = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                const double df = fu[k] - fv[k];
                df_du += df * (u[k] - v[k]);
                df_df += df * df;
            }
            const double margin = df_du - sigma * df_df;
            margins[i] = margin;
            if (margin < -tolerance * (1.0 + df_df)) {
                violated[i] = 1;
                pairs[i] = {std::move(u), std::move(v)};
            }
        } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (i < failed_index) {
                failed_index = i;
                failure = e.what();
            }
        }
    }
    if (failed_index < sample_count)
        throw Error("check_sigma_inverse: operator evaluation failed at sample " +
                    std::to_string(failed_index) + ": " + failure);

    for (std::size_t i = 0; i < sample_count; ++i) {
        report.worst_margin = std::min(report.worst_margin, margins[i]);
        if (violated[i]) {
            ++report.violations;
            report.violating_pairs.push_back(std::move(pairs[i]));
        }
    }
    if (sample_count == 0) report.worst_margin = 0.0;
    return report;
}

std::vector<double> derivative_finite_difference_check(const Operator& op,
                                                       const GridFunction& u,
                                                       const GridFunction& h,
                                                       std::span<const double> eps_list) {
    if (!op.has_derivative())
        throw UnsupportedOperationError("finite-difference check needs a derivative action");
    for (double eps : eps_list)
        if (!(eps > 0.0)) throw ConfigError("finite-difference check: eps must be positive");

    const GridFunction fu = op.apply(u);
    const GridFunction dh = op.derivative_apply(u, h);
    const double scale = std::max(1.0, norm(dh, NormMode::Euclidean));

    std::vector<double> errors;
    errors.reserve(eps_list.size());
    for (double eps : eps_list) {
        GridFunction up = u;
        for (std::size_t i = 0; i < up.size(); ++i) up[i] += eps * h[i];
        const GridFunction fup = op.apply(up);
        double err2 = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double diff = (fup[i] - fu[i]) / eps - dh[i];
            err2 += diff * diff;
        }
        errors.push_back(std::sqrt(err2) / scale);
    }
    return errors;
}

} // namespace simr
