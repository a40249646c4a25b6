#include "simr/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <vector>

#include "simr/errors.hpp"
#include "simr/io.hpp"
#include "simr/oracle.hpp"
#include "simr/problem.hpp"
#include "simr/solver.hpp"

namespace simr::cli {

namespace {

namespace fs = std::filesystem;

void ensure_dir(const std::string& dir) { fs::create_directories(dir); }

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

NoiseModel noise_model(const RunConfig& cfg) {
    return cfg.problem_noise == "gaussian" ? NoiseModel::Gaussian : NoiseModel::Sinusoid;
}

GammaRule gamma_rule(const RunConfig& cfg) {
    if (cfg.solver_gamma == "h") return {GammaRuleKind::ConstantH, 0.0};
    if (cfg.solver_gamma == "auto") return {GammaRuleKind::Adaptive, 0.0};
    return {GammaRuleKind::Constant, parse_double(cfg.solver_gamma)};
}

SolverConfig solver_config(const RunConfig& cfg) {
    SolverConfig sc;
    sc.C = cfg.stop_C;
    sc.zeta = cfg.stop_zeta;
    sc.theta = cfg.stop_theta;
    sc.gamma = gamma_rule(cfg);
    sc.max_iter = cfg.solver_max_iter;
    sc.norm_mode = cfg.parsed_norm_mode();
    if (cfg.solver_u0 == "zero")
        sc.u0_source = U0Source::Zero;
    else if (cfg.solver_u0 == "fixed_point")
        sc.u0_source = U0Source::FixedPoint;
    else {
        sc.u0_source = U0Source::Given;
        sc.u0 = read_vector(cfg.solver_u0);
    }
    if (!cfg.solver_shift.empty()) sc.shift = read_vector(cfg.solver_shift);
    return sc;
}

std::string cert_text(const ScheduleCertificate& cert) {
    std::string out;
    out += "admissible = " + std::string(cert.admissible ? "true" : "false") + "\n";
    out += "minimal_norm_conditions = " +
           std::string(cert.minimal_norm_conditions ? "true" : "false") + "\n";
    out += "sufficient_parameter_box = " +
           std::string(cert.sufficient_parameter_box ? "true" : "false") + "\n";
    for (const auto& note : cert.notes) out += "note: " + note + "\n";
    return out;
}

double median(std::vector<double> v) {
    if (v.empty()) return std::nan("");
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

struct SingleRun {
    RunReport report;
    NoiseSpec noise;
};

SingleRun run_integral(const RunConfig& cfg, double delta_rel, std::uint64_t seed,
                       const SolverConfig& sc_base) {
    const auto problem = build_integral_problem(cfg.problem_N, cfg.problem_midpoint);
    const NormMode mode = cfg.parsed_norm_mode();
    auto [f_delta, noise] =
        make_noise(problem->exact_data(), noise_model(cfg), delta_rel, seed, mode);

    auto [params, cert] =
        make_power_schedule(cfg.schedule_d, cfg.schedule_c, cfg.schedule_b, cfg.schedule_h);
    (void)cert;

    SolverConfig sc = sc_base;
    // Norm of the regularized solution at a_0 feeds the start-condition check.
    try {
        sc.v0_norm =
            norm(solve_regularized(*problem, params.a0(), f_delta, 1e-10, mode).V, mode);
    } catch (const NonConvergenceError&) {
        // Flag falls back to the threshold branch only.
    }

    SingleRun out{run(*problem, f_delta, noise.delta, params, sc, &problem->exact_solution()),
                  noise};
    return out;
}

} // namespace

const ReferenceRow* reference_row(double delta_rel) {
    static const ReferenceRow rows[] = {
        {0.05, 5, 0.166}, {0.03, 6, 0.111},  {0.02, 8, 0.108},
        {0.01, 13, 0.076}, {0.003, 39, 0.065}, {0.001, 104, 0.045},
    };
    for (const auto& row : rows)
        if (std::abs(row.delta_rel - delta_rel) < 1e-12) return &row;
    return nullptr;
}

int cmd_solve(const RunConfig& cfg, const std::string& out_dir) {
    try {
        ensure_dir(out_dir);
        const SolverConfig sc = solver_config(cfg);
        const SingleRun single = run_integral(cfg, cfg.problem_delta_rel, cfg.problem_seed, sc);
        const RunReport& rep = single.report;

        std::string trace = "n,a_n,gamma_n,discrepancy,psi,u_norm\n";
        for (std::size_t n = 0; n < rep.discrepancy_trace.size(); ++n) {
            trace += std::to_string(n) + ',' + format_double(rep.a_trace[n]) + ',' +
                     format_double(rep.gamma_trace[n]) + ',' +
                     format_double(rep.discrepancy_trace[n]) + ',' +
                     format_double(rep.residual_trace[n]) + ',' +
                     format_double(rep.u_norm_trace[n]) + '\n';
        }
        write_text_file(join(out_dir, "trace.csv"), trace);

        write_vector(join(out_dir, "final.txt"), rep.final_iterate);

        const auto problem = build_integral_problem(cfg.problem_N, cfg.problem_midpoint);
        std::string solution = "x,u_exact,u_final\n";
        for (std::size_t i = 0; i < rep.final_iterate.size(); ++i) {
            solution += format_double(grid_point(i, cfg.problem_N)) + ',' +
                        format_double(problem->exact_solution()[i]) + ',' +
                        format_double(rep.final_iterate[i]) + '\n';
        }
        write_text_file(join(out_dir, "solution.csv"), solution);

        std::string report;
        report += "n_delta = " +
                  (rep.n_delta ? std::to_string(*rep.n_delta) : std::string("not reached")) + "\n";
        report += "stop_reason = " +
                  std::string(rep.stop_reason == StopReason::Discrepancy ? "discrepancy"
                                                                         : "max_iter") +
                  "\n";
        report += "delta = " + format_double(rep.delta) + "\n";
        report += "threshold = " + format_double(rep.threshold) + "\n";
        report += "kappa = " + format_double(single.noise.kappa) + "\n";
        report += "noise_seed = " + std::to_string(single.noise.seed_used) + "\n";
        if (rep.rel_error) report += "rel_error = " + format_double(*rep.rel_error) + "\n";
        report += "iterations_recorded = " + std::to_string(rep.discrepancy_trace.size()) + "\n";
        report += "max_u_norm = " + format_double(rep.max_u_norm) + "\n";
        report += "ball_exceeded = " + std::string(rep.ball_exceeded ? "true" : "false") + "\n";
        report += "start_condition_ok = " +
                  std::string(rep.start_condition_ok ? "true" : "false") + "\n";
        report += "minimal_norm_claim = " +
                  std::string(rep.minimal_norm_claim ? "true" : "false") + "\n";
        report += cert_text(rep.certificate_echo);
        write_text_file(join(out_dir, "report.txt"), report);

        return rep.stop_reason == StopReason::Discrepancy ? 0 : 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const InvalidScheduleError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_table1(const RunConfig& cfg, const std::string& out_dir) {
    try {
        ensure_dir(out_dir);
        const SolverConfig sc = solver_config(cfg);
        if (cfg.experiment_delta_rels.empty())
            throw ConfigError("experiment.delta_rels must not be empty");

        struct Row {
            double delta_rel;
            std::uint64_t seed;
            std::optional<std::size_t> n_delta;
            std::optional<double> rel_error;
            double runtime_ms = 0.0;
            std::string error;
        };
        const std::size_t n_dr = cfg.experiment_delta_rels.size();
        const std::size_t n_seeds = cfg.experiment_seeds.size();
        std::vector<Row> rows(n_dr * n_seeds);

        // Rows are independent runs; results land in preassigned slots and are
        // written by this thread afterwards, so the files do not depend on the
        // execution order.
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) collapse(2)
#endif
        for (std::ptrdiff_t di = 0; di < static_cast<std::ptrdiff_t>(n_dr); ++di) {
            for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(n_seeds); ++si) {
                Row& row = rows[static_cast<std::size_t>(di) * n_seeds +
                                static_cast<std::size_t>(si)];
                row.delta_rel = cfg.experiment_delta_rels[static_cast<std::size_t>(di)];
                row.seed = cfg.experiment_seeds[static_cast<std::size_t>(si)];
                const auto t0 = std::chrono::steady_clock::now();
                try {
                    const SingleRun single = run_integral(cfg, row.delta_rel, row.seed, sc);
                    if (single.report.stop_reason == StopReason::Discrepancy)
                        row.n_delta = single.report.n_delta;
                    row.rel_error = single.report.rel_error;
                } catch (const Error& e) {
                    row.error = e.what();
                }
                const auto t1 = std::chrono::steady_clock::now();
                row.runtime_ms =
                    std::chrono::duration<double, std::milli>(t1 - t0).count();
            }
        }

        std::string table = "delta_rel,seed,n_delta,rel_error,runtime_ms\n";
        for (const auto& row : rows) {
            table += format_double(row.delta_rel) + ',' + std::to_string(row.seed) + ',';
            table += row.n_delta ? std::to_string(*row.n_delta) : std::string();
            table += ',';
            table += row.rel_error ? format_double(*row.rel_error) : std::string();
            table += ',' + format_double(row.runtime_ms) + '\n';
            if (!row.error.empty())
                std::cerr << "table1 row (delta_rel=" << row.delta_rel << ", seed=" << row.seed
                          << ") failed: " << row.error << "\n";
        }
        write_text_file(join(out_dir, "table1.csv"), table);

        std::string summary =
            "delta_rel,runs,median_n_delta,median_rel_error,ref_n_delta,ref_rel_error\n";
        for (std::size_t di = 0; di < n_dr; ++di) {
            const double dr = cfg.experiment_delta_rels[di];
            std::vector<double> ns, errs;
            std::size_t completed = 0;
            for (std::size_t si = 0; si < n_seeds; ++si) {
                const Row& row = rows[di * n_seeds + si];
                if (row.n_delta) {
                    ns.push_back(static_cast<double>(*row.n_delta));
                    ++completed;
                }
                if (row.rel_error) errs.push_back(*row.rel_error);
            }
            summary += format_double(dr) + ',' + std::to_string(completed) + ',';
            summary += ns.empty() ? std::string() : format_double(median(std::move(ns)));
            summary += ',';
            summary += errs.empty() ? std::string() : format_double(median(std::move(errs)));
            summary += ',';
            if (const ReferenceRow* ref = reference_row(dr)) {
                summary += std::to_string(ref->n_delta);
                summary += ',' + format_double(ref->rel_error);
            } else {
                summary += ',';
            }
            summary += '\n';
        }
        write_text_file(join(out_dir, "summary.csv"), summary);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const InvalidScheduleError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_verify(const RunConfig& cfg, const std::string& out_dir) {
    try {
        ensure_dir(out_dir);
        const NormMode mode = cfg.parsed_norm_mode();
        auto [params, cert] = make_power_schedule(cfg.schedule_d, cfg.schedule_c,
                                                  cfg.schedule_b, cfg.schedule_h);
        write_text_file(join(out_dir, "schedule_certificate.txt"), cert_text(cert));

        OperatorHandle op;
        GridFunction f;
        double y_norm = 0.0;
        if (cfg.verify_problem == "integral") {
            auto problem = build_integral_problem(cfg.problem_N, cfg.problem_midpoint);
            f = problem->exact_data();
            y_norm = norm(problem->exact_solution(), mode);
            op = std::move(problem);
        } else {
            // Built-in diagonal spectrum 1/(i+1); data chosen in the range so the
            // minimal-norm solution is known in closed form.
            const std::size_t n = cfg.problem_N;
            std::vector<double> eigenvalues(n);
            for (std::size_t i = 0; i < n; ++i)
                eigenvalues[i] = 1.0 / static_cast<double>(i + 1);
            auto diag = make_linear_spd(std::move(eigenvalues));
            GridFunction y_true = GridFunction::zeros(n);
            for (std::size_t i = 0; i < n; ++i)
                y_true[i] = 1.0 / std::sqrt(static_cast<double>(i + 1));
            f = diag->apply(y_true);
            y_norm = norm(y_true, mode);
            op = std::move(diag);
        }

        auto [f_delta, noise] =
            make_noise(f, noise_model(cfg), cfg.problem_delta_rel, cfg.problem_seed, mode);

        LemmaReport report;
        try {
            report = verify_path_inequalities(*op, params, f_delta, noise.delta, y_norm,
                                              cfg.verify_n_max, cfg.verify_tol, mode);
        } catch (const NonConvergenceError& e) {
            std::cerr << "oracle did not converge at a = " << format_double(e.a_value())
                      << ": " << e.what() << "\n";
            return 3;
        }

        std::string csv = "name,n_range,max_violation,tolerance,pass\n";
        for (const auto& c : report.checks) {
            std::string pass;
            if (!c.asserted && !c.note.empty() && c.note.rfind("skipped", 0) == 0)
                pass = "skipped (hypothesis)";
            else if (!c.asserted)
                pass = std::string("not asserted (") + (c.pass ? "true" : "false") + ")";
            else
                pass = c.pass ? "true" : "false";
            csv += c.name + ',' + std::to_string(c.n_begin) + ".." + std::to_string(c.n_end) +
                   ',' + format_double(c.max_violation) + ',' + format_double(c.tolerance) +
                   ',' + pass + '\n';
        }
        write_text_file(join(out_dir, "lemmas.csv"), csv);

        return report.all_asserted_pass() ? 0 : 4;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const InvalidScheduleError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace simr::cli
