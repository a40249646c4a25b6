#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "simr/kernels.hpp"
#include "support/reference.hpp"

namespace k = simr::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = (static_cast<double>(rng() >> 11) * 0x1.0p-53) * 2.0 - 1.0;
    return v;
}

} // namespace

TEST_CASE("serial matvec matches the naive triple loop") {
    for (std::size_t n : {1u, 3u, 40u, 100u}) {
        const auto a = random_vector(n * n, 100 + n);
        const auto x = random_vector(n, 200 + n);
        std::vector<double> y(n), expected;
        k::serial::matvec(a.data(), n, n, x, y);
        simr_test::naive_matvec(a, n, n, x, expected);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(y[i] == doctest::Approx(expected[i]).epsilon(1e-14));
    }
}

TEST_CASE("parallel kernels are bitwise-identical to serial") {
    // Awkward sizes around the dot-block boundary included on purpose.
    for (std::size_t n : {1u, 100u, 255u, 256u, 257u, 1000u, 5000u}) {
        const auto a = random_vector(n, 300 + n);
        const auto b = random_vector(n, 400 + n);
        const auto w = random_vector(n, 500 + n);

        CHECK(k::serial::dot(a, b) == k::par::dot(a, b));
        CHECK(k::serial::dot_weighted(a, b, w) == k::par::dot_weighted(a, b, w));

        std::vector<double> out_s(n), out_p(n);
        k::serial::step_update(a, b, 0.07, 0.9, w, nullptr, out_s);
        k::par::step_update(a, b, 0.07, 0.9, w, nullptr, out_p);
        CHECK(out_s == out_p);

        k::serial::step_update(a, b, 0.07, 0.9, w, b.data(), out_s);
        k::par::step_update(a, b, 0.07, 0.9, w, b.data(), out_p);
        CHECK(out_s == out_p);

        k::serial::residual(a, b, 0.3, w, nullptr, out_s);
        k::par::residual(a, b, 0.3, w, nullptr, out_p);
        CHECK(out_s == out_p);

        k::serial::arctan3(a, out_s);
        k::par::arctan3(a, out_p);
        CHECK(out_s == out_p);

        k::serial::arctan3_derivative(a, b, out_s);
        k::par::arctan3_derivative(a, b, out_p);
        CHECK(out_s == out_p);
    }

    for (std::size_t n : {17u, 128u, 300u}) {
        const auto a = random_vector(n * n, 600 + n);
        const auto x = random_vector(n, 700 + n);
        std::vector<double> y_s(n), y_p(n);
        k::serial::matvec(a.data(), n, n, x, y_s);
        k::par::matvec(a.data(), n, n, x, y_p);
        CHECK(y_s == y_p);
    }
}

TEST_CASE("blocked dot stays close to the naive sum") {
    const auto a = random_vector(100000, 1);
    const auto b = random_vector(100000, 2);
    const double expected = simr_test::naive_dot(a, b);
    CHECK(k::serial::dot(a, b) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("dispatcher result does not depend on the parallel switch") {
    const bool saved_enabled = k::parallel_enabled();
    const std::size_t saved_threshold = k::parallel_threshold();

    const std::size_t n = 2000;
    const auto a = random_vector(n * n, 11);
    const auto x = random_vector(n, 12);
    std::vector<double> y1(n), y2(n);

    k::set_parallel(false);
    k::matvec(a.data(), n, n, x, y1);
    double d1 = k::dot(x, x);

    k::set_parallel(true);
    k::set_parallel_threshold(0);
    k::matvec(a.data(), n, n, x, y2);
    double d2 = k::dot(x, x);

    CHECK(y1 == y2);
    CHECK(d1 == d2);

    k::set_parallel(saved_enabled);
    k::set_parallel_threshold(saved_threshold);
}

TEST_CASE("step_update computes u - gamma*(fu + a*(u - shift) - f_delta)") {
    std::vector<double> u{1.0, 2.0}, fu{0.5, -0.5}, fd{0.0, 1.0}, shift{1.0, 1.0};
    std::vector<double> out(2);
    k::serial::step_update(u, fu, 0.5, 2.0, fd, shift.data(), out);
    // by hand: out0 = 1 - 2*(0.5 + 0.5*(1-1) - 0) = 0
    //          out1 = 2 - 2*(-0.5 + 0.5*(2-1) - 1) = 4
    CHECK(out[0] == doctest::Approx(0.0));
    CHECK(out[1] == doctest::Approx(4.0));
}
