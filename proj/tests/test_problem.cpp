#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "simr/operators.hpp"
#include "simr/problem.hpp"
#include "simr/rng.hpp"

using namespace simr;

TEST_CASE("step function endpoints and grid hit at one half") {
    const GridFunction two = step_function(2);
    CHECK(two[0] == 0.0);
    CHECK(two[1] == 1.0);

    // N = 100: x_i = i/99 never equals 0.5; 50 zeros then 50 ones.
    const GridFunction hundred = step_function(100);
    std::size_t zeros = 0, ones = 0;
    for (double v : hundred) (v == 0.0 ? zeros : ones) += 1;
    CHECK(zeros == 50);
    CHECK(ones == 50);

    // N = 101: x_50 = 0.5 takes the configured value (default 1).
    const GridFunction odd = step_function(101);
    CHECK(odd[50] == 1.0);
    CHECK(step_function(101, 0.0)[50] == 0.0);

    CHECK_THROWS_AS(step_function(1), ConfigError);
}

TEST_CASE("operator vanishes at zero") {
    const auto problem = build_integral_problem(50);
    const GridFunction f0 = problem->apply(GridFunction::zeros(50));
    for (double v : f0) CHECK(v == 0.0);
}

TEST_CASE("kernel matrix is the row-wise trapezoid discretization") {
    const std::size_t n = 100;
    const auto problem = build_integral_problem(n);
    const auto& k = problem->kernel_matrix();

    // Entries positive; K_ij / w_j symmetric.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            CHECK(k[i * n + j] > 0.0);
            const double eij = k[i * n + j] / trapezoid_weight(j, n);
            const double eji = k[j * n + i] / trapezoid_weight(i, n);
            CHECK(eij == doctest::Approx(eji).epsilon(1e-13));
        }
    }

    // Row sums approximate the closed-form integral of the kernel:
    // int_0^1 e^{-|x-y|} dy = 2 - e^{-x} - e^{-(1-x)}, to O(N^-2).
    GridFunction ones = GridFunction::constant(n, 1.0);
    const GridFunction row_sums = problem->apply(ones);
    const double atan1_cubed = std::pow(std::atan(1.0), 3.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid_point(i, n);
        const double exact = 2.0 - std::exp(-x) - std::exp(-(1.0 - x));
        CHECK(std::abs((row_sums[i] - atan1_cubed) - exact) <=
              1.0 / static_cast<double>(n * n));
    }
}

TEST_CASE("exact data is recomputed from the exact solution") {
    const auto problem = build_integral_problem(64);
    const GridFunction recomputed = problem->apply(problem->exact_solution());
    CHECK(problem->exact_data() == recomputed);
    CHECK(problem->grid_size() == 64);
    CHECK_THROWS_AS(build_integral_problem(1), ConfigError);
}

TEST_CASE("noise construction hits the requested relative level exactly") {
    const auto problem = build_integral_problem(100);
    const GridFunction& f = problem->exact_data();
    for (NoiseModel model : {NoiseModel::Gaussian, NoiseModel::Sinusoid}) {
        for (NormMode mode : {NormMode::Euclidean, NormMode::TrapezoidWeighted}) {
            auto [f_delta, spec] = make_noise(f, model, 0.013, 5, mode);
            GridFunction diff = f_delta;
            for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= f[i];
            const double achieved = norm(diff, mode) / norm(f, mode);
            CHECK(achieved == doctest::Approx(0.013).epsilon(1e-12));
            CHECK(spec.delta == doctest::Approx(0.013 * norm(f, mode)).epsilon(1e-13));
        }
    }
}

TEST_CASE("sinusoid noise is the deterministic sin(3 pi x) profile") {
    const std::size_t n = 100;
    const auto problem = build_integral_problem(n);
    auto [f_delta, spec] = make_noise(problem->exact_data(), NoiseModel::Sinusoid, 0.01, 42);
    CHECK(spec.redraws == 0);
    for (std::size_t i : {0u, 1u, 33u, 99u}) {
        const double expected = problem->exact_data()[i] +
                                spec.kappa * std::sin(3.0 * std::numbers::pi *
                                                      grid_point(i, n));
        CHECK(f_delta[i] == expected);
    }
    // Seed must not matter for the deterministic model.
    auto [f_delta2, spec2] = make_noise(problem->exact_data(), NoiseModel::Sinusoid, 0.01, 7);
    (void)spec2;
    CHECK(f_delta == f_delta2);
}

TEST_CASE("sinusoid profile vanishing on the grid is rejected") {
    // N = 4: x = {0, 1/3, 2/3, 1} are all roots of sin(3 pi x).
    GridFunction f = GridFunction::constant(4, 1.0);
    CHECK_THROWS_AS(make_noise(f, NoiseModel::Sinusoid, 0.01, 1), ConfigError);
}

TEST_CASE("gaussian noise is reproducible for a fixed seed") {
    const auto problem = build_integral_problem(80);
    auto [a1, s1] = make_noise(problem->exact_data(), NoiseModel::Gaussian, 0.01, 1234);
    auto [a2, s2] = make_noise(problem->exact_data(), NoiseModel::Gaussian, 0.01, 1234);
    CHECK(a1 == a2);
    CHECK(s1.kappa == s2.kappa);
    auto [b, s3] = make_noise(problem->exact_data(), NoiseModel::Gaussian, 0.01, 1235);
    (void)s3;
    CHECK(!(a1 == b));
}

TEST_CASE("make_noise validates its inputs") {
    GridFunction zero = GridFunction::zeros(10);
    CHECK_THROWS_AS(make_noise(zero, NoiseModel::Gaussian, 0.01, 1), ConfigError);
    GridFunction f = GridFunction::constant(10, 1.0);
    CHECK_THROWS_AS(make_noise(f, NoiseModel::Gaussian, 0.0, 1), ConfigError);
}

TEST_CASE("derivative action is bounded by 1 + sqrt(2/pi)") {
    const std::size_t n = 100;
    const auto problem = build_integral_problem(n);
    const double bound = 1.0 + std::sqrt(2.0 / std::numbers::pi);
    CHECK(problem->sigma_inverse_bound() == bound);

    Rng rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        const GridFunction u = rng.ball_point(n, 10.0);
        const GridFunction h = rng.normal_vector(n);
        const double ratio = norm(problem->derivative_apply(u, h), NormMode::Euclidean) /
                             norm(h, NormMode::Euclidean);
        CHECK(ratio <= bound + 1e-10 + 1.0 / static_cast<double>(n * n));
    }
}

TEST_CASE("discretized operator is monotone on sampled pairs") {
    const std::size_t n = 100;
    const auto problem = build_integral_problem(n);
    Rng rng(33);
    for (int trial = 0; trial < 1000; ++trial) {
        const GridFunction u = rng.ball_point(n, 10.0);
        const GridFunction v = rng.ball_point(n, 10.0);
        const GridFunction fu = problem->apply(u);
        const GridFunction fv = problem->apply(v);
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m += (fu[i] - fv[i]) * (u[i] - v[i]);
        CHECK(m >= -1e-10);
    }
}

TEST_CASE("sigma-inverse certification of the integral testbed") {
    const auto problem = build_integral_problem(100);
    const double sigma = 1.0 / problem->sigma_inverse_bound();
    const SigmaCheckReport rep = check_sigma_inverse(*problem, sigma, 10.0, 1000, 2024);
    CHECK(rep.samples_tested == 1000);
    CHECK(rep.violations == 0);
}
