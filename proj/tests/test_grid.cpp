#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "simr/grid.hpp"
#include "simr/rng.hpp"
#include "support/reference.hpp"

using namespace simr;

TEST_CASE("inner product basics") {
    GridFunction ones = GridFunction::constant(3, 1.0);
    CHECK(inner(ones, ones, NormMode::Euclidean) == 3.0);

    GridFunction a(std::vector<double>{1.0, 0.0});
    GridFunction b(std::vector<double>{0.0, 1.0});
    CHECK(inner(a, b, NormMode::Euclidean) == 0.0);
    CHECK(inner(a, b, NormMode::TrapezoidWeighted) == 0.0);
}

TEST_CASE("trapezoid weights sum to the interval length") {
    // Independent oracle: sum the weights directly and compare against the
    // weighted inner product of the constant-1 function with itself.
    const std::size_t n = 101;
    double weight_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) weight_sum += trapezoid_weight(i, n);
    CHECK(weight_sum == doctest::Approx(1.0).epsilon(1e-14));

    GridFunction ones = GridFunction::constant(n, 1.0);
    CHECK(inner(ones, ones, NormMode::TrapezoidWeighted) ==
          doctest::Approx(weight_sum).epsilon(1e-15));
    CHECK(norm(ones, NormMode::TrapezoidWeighted) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("norm basics") {
    CHECK(norm(GridFunction::zeros(5), NormMode::Euclidean) == 0.0);
    GridFunction v(std::vector<double>{3.0, 4.0});
    CHECK(norm(v, NormMode::Euclidean) == 5.0);
}

TEST_CASE("constant-1 trapezoid norm is 1 on every grid") {
    for (std::size_t n : {2u, 3u, 10u, 101u, 257u}) {
        GridFunction ones = GridFunction::constant(n, 1.0);
        CHECK(norm(ones, NormMode::TrapezoidWeighted) == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("length mismatch is a dimension error") {
    GridFunction a = GridFunction::zeros(3);
    GridFunction b = GridFunction::zeros(4);
    CHECK_THROWS_AS(inner(a, b, NormMode::Euclidean), DimensionError);
}

TEST_CASE("trapezoid mode rejects single-point grids, euclidean does not") {
    GridFunction s(std::vector<double>{2.0});
    CHECK(norm(s, NormMode::Euclidean) == 2.0);
    CHECK_THROWS_AS(norm(s, NormMode::TrapezoidWeighted), DimensionError);
}

TEST_CASE("cauchy-schwarz and triangle inequality on random pairs") {
    Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 50);
        GridFunction u = rng.normal_vector(n);
        GridFunction v = rng.normal_vector(n);
        for (NormMode mode : {NormMode::Euclidean, NormMode::TrapezoidWeighted}) {
            const double lhs = std::abs(inner(u, v, mode));
            const double rhs = norm(u, mode) * norm(v, mode);
            CHECK(lhs <= rhs * (1.0 + 1e-12));

            GridFunction sum = u;
            for (std::size_t i = 0; i < n; ++i) sum[i] += v[i];
            CHECK(norm(sum, mode) <= (norm(u, mode) + norm(v, mode)) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("inner is symmetric and positive on the diagonal") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        GridFunction u = rng.normal_vector(17);
        GridFunction v = rng.normal_vector(17);
        for (NormMode mode : {NormMode::Euclidean, NormMode::TrapezoidWeighted}) {
            CHECK(inner(u, v, mode) == inner(v, u, mode));
            CHECK(inner(u, u, mode) >= 0.0);
        }
    }
}

TEST_CASE("all_finite flags NaN and Inf") {
    GridFunction u = GridFunction::zeros(4);
    CHECK(u.all_finite());
    u[2] = std::nan("");
    CHECK(!u.all_finite());
    u[2] = 1e308 * 10.0;
    CHECK(!u.all_finite());
}

TEST_CASE("euclidean inner matches the naive left-to-right sum") {
    Rng rng(3);
    GridFunction u = rng.normal_vector(1000);
    GridFunction v = rng.normal_vector(1000);
    const double expected = simr_test::naive_dot(u.values(), v.values());
    CHECK(inner(u, v, NormMode::Euclidean) == doctest::Approx(expected).epsilon(1e-13));
}
