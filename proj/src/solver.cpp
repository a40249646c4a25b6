#include "simr/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "simr/kernels.hpp"

namespace simr {

namespace {

double resolve_theta(const SolverConfig& cfg) {
    return cfg.theta > 0.0 ? cfg.theta : 0.5 * cfg.C;
}

double gamma_for(const GammaRule& rule, double h, double sigma_inverse, double a_n) {
    switch (rule.kind) {
        case GammaRuleKind::ConstantH: return h;
        case GammaRuleKind::Constant: return rule.value;
        case GammaRuleKind::Adaptive: {
            const double g = gamma_max(sigma_inverse, a_n);
            return rule.value > 0.0 ? std::min(rule.value, g) : g;
        }
    }
    return h;
}

void check_lengths(const Operator& op, const GridFunction& f_delta,
                   const SolverConfig& cfg) {
    if (f_delta.size() != op.dimension())
        throw DimensionError("run: data length does not match operator dimension");
    if (cfg.shift && cfg.shift->size() != op.dimension())
        throw DimensionError("run: shift length does not match operator dimension");
    if (cfg.u0_source == U0Source::Given && cfg.u0.size() != op.dimension())
        throw DimensionError("run: u0 length does not match operator dimension");
}

GridFunction psi_vector(const GridFunction& u, const GridFunction& fu, double a,
                        const GridFunction& f_delta, const GridFunction* shift) {
    GridFunction g = GridFunction::zeros(u.size());
    kernels::residual(u.span(), fu.span(), a, f_delta.span(),
                      shift ? shift->data() : nullptr, g.span());
    return g;
}

} // namespace

GridFunction step_from(const GridFunction& u, const GridFunction& fu, double a,
                       double gamma, const GridFunction& f_delta,
                       const GridFunction* shift) {
    GridFunction out = GridFunction::zeros(u.size());
    kernels::step_update(u.span(), fu.span(), a, gamma, f_delta.span(),
                         shift ? shift->data() : nullptr, out.span());
    return out;
}

GridFunction step(const Operator& op, const GridFunction& u, double a, double gamma,
                  const GridFunction& f_delta, const GridFunction* shift) {
    if (!(gamma > 0.0)) throw ConfigError("step: gamma must be positive");
    if (u.size() != f_delta.size() || (shift && shift->size() != u.size()))
        throw DimensionError("step: length mismatch");
    const GridFunction fu = op.apply(u);
    GridFunction out = step_from(u, fu, a, gamma, f_delta, shift);
    if (!out.all_finite())
        throw DivergenceError("step: non-finite iterate", 0, norm(u, NormMode::Euclidean));
    return out;
}

namespace {

template <typename AOfN>
RunReport run_impl(const Operator& op, const GridFunction& f_delta, double delta,
                   AOfN&& a_of_n, double h, ScheduleCertificate certificate,
                   std::size_t n_cap, const SolverConfig& cfg,
                   const GridFunction* reference) {
    check_lengths(op, f_delta, cfg);

    const double threshold = cfg.C * std::pow(delta, cfg.zeta);
    if (!(threshold > delta))
        throw ConfigError("run: C * delta^zeta = " + std::to_string(threshold) +
                          " does not exceed delta = " + std::to_string(delta));

    const double sigma_inverse = op.sigma_inverse_bound();
    const double a0 = a_of_n(0);
    {
        // a_n decreases, so the step-size window is tightest at n = 0.
        const double g0 = gamma_for(cfg.gamma, h, sigma_inverse, a0);
        if (g0 < h || g0 > gamma_max(sigma_inverse, a0))
            throw ConfigError("run: gamma_0 = " + std::to_string(g0) +
                              " violates h <= gamma_n <= 2/(sigma_inverse + 2 a_n) = " +
                              std::to_string(gamma_max(sigma_inverse, a0)));
    }

    const GridFunction* shift = cfg.shift ? &*cfg.shift : nullptr;

    GridFunction u;
    switch (cfg.u0_source) {
        case U0Source::Zero: u = GridFunction::zeros(op.dimension()); break;
        case U0Source::Given: u = cfg.u0; break;
        case U0Source::FixedPoint: {
            const double gamma_fp = 1.0 / (sigma_inverse + 2.0 * a0);
            const double tol = resolve_theta(cfg) * std::pow(delta, cfg.zeta);
            u = fixed_point_initializer(op, a0, f_delta, GridFunction::zeros(op.dimension()),
                                        gamma_fp, tol, 1000000, cfg.norm_mode);
            break;
        }
    }

    RunReport report;
    report.delta = delta;
    report.threshold = threshold;
    report.certificate_echo = std::move(certificate);

    const std::optional<double> radius = op.ball_radius();

    for (std::size_t n = 0;; ++n) {
        const double a_n = a_of_n(n);
        const double gamma_n = gamma_for(cfg.gamma, h, sigma_inverse, a_n);
        const GridFunction fu = op.apply(u);

        GridFunction misfit = fu;
        for (std::size_t i = 0; i < misfit.size(); ++i) misfit[i] -= f_delta[i];
        const double discrepancy = norm(misfit, cfg.norm_mode);
        const GridFunction g = psi_vector(u, fu, a_n, f_delta, shift);
        const double psi = norm(g, cfg.norm_mode);
        const double u_norm = norm(u, cfg.norm_mode);

        if (n == 0) {
            const double theta = resolve_theta(cfg);
            const double v0n = cfg.v0_norm.value_or(std::numeric_limits<double>::quiet_NaN());
            report.start_condition_ok =
                psi <= theta * std::pow(delta, cfg.zeta) ||
                (std::isfinite(v0n) && psi <= 0.125 * a0 * v0n);
            report.minimal_norm_claim =
                report.certificate_echo.minimal_norm_conditions && report.start_condition_ok;
        }

        report.discrepancy_trace.push_back(discrepancy);
        report.residual_trace.push_back(psi);
        report.a_trace.push_back(a_n);
        report.gamma_trace.push_back(gamma_n);
        report.u_norm_trace.push_back(u_norm);
        report.max_u_norm = std::max(report.max_u_norm, u_norm);

        if (discrepancy <= threshold) {
            report.n_delta = n;
            report.stop_reason = StopReason::Discrepancy;
            break;
        }
        if (n == n_cap) {
            report.stop_reason = StopReason::MaxIter;
            break;
        }

        GridFunction next = step_from(u, fu, a_n, gamma_n, f_delta, shift);
        if (!next.all_finite())
            throw SolverDivergenceError("run: non-finite iterate at step " + std::to_string(n + 1),
                                        n + 1, u_norm, std::move(report));
        u = std::move(next);
    }

    report.ball_exceeded = radius && report.max_u_norm > *radius;
    report.final_iterate = std::move(u);
    if (reference) {
        const double ref_norm = norm(*reference, cfg.norm_mode);
        GridFunction diff = report.final_iterate;
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= (*reference)[i];
        report.rel_error = ref_norm > 0.0 ? norm(diff, cfg.norm_mode) / ref_norm
                                          : norm(diff, cfg.norm_mode);
    }
    return report;
}

} // namespace

RunReport run(const Operator& op, const GridFunction& f_delta, double delta,
              const ScheduleParams& s, const SolverConfig& cfg,
              const GridFunction* reference) {
    return run_impl(
        op, f_delta, delta, [&s](std::size_t n) { return s.a_at(n); }, s.h, certify(s),
        cfg.max_iter, cfg, reference);
}

RunReport run(const Operator& op, const GridFunction& f_delta, double delta,
              const TabulatedSchedule& t, const SolverConfig& cfg,
              const GridFunction* reference) {
    if (t.values.size() < 2 || !(t.h > 0.0))
        throw ConfigError("run: tabulated schedule needs at least 2 values and h > 0");
    return run_impl(
        op, f_delta, delta, [&t](std::size_t n) { return t.a_at(n); }, t.h,
        certify_sampled(t), std::min(cfg.max_iter, t.last_index()), cfg, reference);
}

GridFunction fixed_point_initializer(const Operator& op, double a0,
                                     const GridFunction& f_delta, const GridFunction& v0,
                                     double gamma, double tol, std::size_t max_iter,
                                     NormMode mode) {
    if (!(gamma > 0.0) || !(gamma < 2.0 / (op.sigma_inverse_bound() + 2.0 * a0)))
        throw ConfigError("fixed_point_initializer: gamma must lie in (0, 2/(sigma_inverse + 2 a0))");
    GridFunction v = v0;
    double res = 0.0;
    for (std::size_t it = 0; it <= max_iter; ++it) {
        const GridFunction fv = op.apply(v);
        GridFunction g = GridFunction::zeros(v.size());
        kernels::residual(v.span(), fv.span(), a0, f_delta.span(), nullptr, g.span());
        res = norm(g, mode);
        if (res <= tol) return v;
        if (it == max_iter) break;
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= gamma * g[i];
        if (!v.all_finite())
            throw DivergenceError("fixed_point_initializer: non-finite iterate", it + 1, res);
    }
    throw NonConvergenceError("fixed_point_initializer: residual " + std::to_string(res) +
                                  " above tol after " + std::to_string(max_iter) + " iterations",
                              res, a0);
}

bool check_start_condition(const GridFunction& u0, const Operator& op, double a0,
                           const GridFunction& f_delta, double delta,
                           const SolverConfig& cfg, double v0_norm) {
    const GridFunction fu = op.apply(u0);
    const GridFunction* shift = cfg.shift ? &*cfg.shift : nullptr;
    GridFunction g = GridFunction::zeros(u0.size());
    kernels::residual(u0.span(), fu.span(), a0, f_delta.span(),
                      shift ? shift->data() : nullptr, g.span());
    const double psi0 = norm(g, cfg.norm_mode);
    const double theta = resolve_theta(cfg);
    if (psi0 <= theta * std::pow(delta, cfg.zeta)) return true;
    return std::isfinite(v0_norm) && psi0 <= 0.125 * a0 * v0_norm;
}

} // namespace simr
