#ifndef SIMR_CONFIG_HPP
#define SIMR_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "simr/grid.hpp"

namespace simr {

/// Run configuration parsed from a flat "dotted.key = value" text file.
/// Every key has a default (the reference experiment: N = 100,
/// a_n = 0.1/(5+n)^0.99, gamma = h = 1, C = 1.01, zeta = 0.99, Gaussian noise);
/// unknown keys are rejected.
struct RunConfig {
    // schedule.* -- defaults give a_n = 0.1/(5 + n)^0.99
    double schedule_d;
    double schedule_c = 5.0;
    double schedule_b = 0.99;
    double schedule_h = 1.0;

    // stop.*
    double stop_C = 1.01;
    double stop_zeta = 0.99;
    double stop_theta = 0.0; // <= 0: use C/2

    // solver.*
    std::size_t solver_max_iter = 100000;
    std::string solver_gamma = "h"; // "h", "auto", or a decimal
    std::string solver_u0 = "zero"; // "zero", "fixed_point", or a vector-file path
    std::string solver_shift;       // empty or a vector-file path

    // norm.*
    std::string norm_mode = "euclidean"; // or "trapezoid"

    // problem.*
    std::size_t problem_N = 100;
    std::string problem_noise = "gaussian"; // or "sinusoid"
    double problem_delta_rel = 0.01;
    std::uint64_t problem_seed = 1;
    double problem_midpoint = 1.0;

    // output.*
    std::string output_dir = "./out";

    // experiment.* (table sweeps)
    std::vector<std::uint64_t> experiment_seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::vector<double> experiment_delta_rels = {0.05, 0.03, 0.02, 0.01, 0.003, 0.001};

    // verify.*
    std::string verify_problem = "integral"; // or "linear_spd"
    std::size_t verify_n_max = 200;
    double verify_tol = 1e-11;

    RunConfig();

    NormMode parsed_norm_mode() const;
};

/// Parses a config file; keys may appear in any order, '#' starts a comment.
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

} // namespace simr

#endif // SIMR_CONFIG_HPP
