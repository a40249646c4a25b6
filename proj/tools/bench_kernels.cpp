// Benchmark comparing the serial reference kernels against the OpenMP
// versions. Emits one CSV row per (kernel, size, impl) to stdout:
//     kernel,n,impl,reps,best_ms,checksum
// The checksum column doubles as an agreement check: the two impls of one
// kernel must print identical checksums (they are engineered to be
// bitwise-equal, not just close).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "simr/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using clock_type = std::chrono::steady_clock;

double best_ms(int reps, const std::function<void()>& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = clock_type::now();
        fn();
        const auto t1 = clock_type::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = (static_cast<double>(rng() >> 11) * 0x1.0p-53) * 2.0 - 1.0;
    return v;
}

void row(const char* kernel, std::size_t n, const char* impl, int reps, double ms,
         double checksum) {
    std::printf("%s,%zu,%s,%d,%.6f,%.17g\n", kernel, n, impl, reps, ms, checksum);
}

} // namespace

int main(int argc, char** argv) {
    int reps = 7;
    if (argc > 1) reps = std::atoi(argv[1]);
    if (reps < 1) reps = 1;

#ifdef _OPENMP
    std::fprintf(stderr, "openmp threads: %d\n", omp_get_max_threads());
#else
    std::fprintf(stderr, "compiled without openmp; par == serial\n");
#endif
    std::printf("kernel,n,impl,reps,best_ms,checksum\n");

    namespace k = simr::kernels;

    for (std::size_t n : {100u, 512u, 1024u, 2048u}) {
        const auto a = random_vector(n * n, 11);
        const auto x = random_vector(n, 13);
        std::vector<double> y(n);
        const double ms_s =
            best_ms(reps, [&] { k::serial::matvec(a.data(), n, n, x, y); });
        row("matvec", n, "serial", reps, ms_s, y[n / 2]);
        const double ms_p = best_ms(reps, [&] { k::par::matvec(a.data(), n, n, x, y); });
        row("matvec", n, "par", reps, ms_p, y[n / 2]);
    }

    for (std::size_t n : {100000u, 1000000u, 4000000u}) {
        const auto a = random_vector(n, 17);
        const auto b = random_vector(n, 19);
        double s = 0.0;
        const double ms_s = best_ms(reps, [&] { s = k::serial::dot(a, b); });
        row("dot", n, "serial", reps, ms_s, s);
        const double ms_p = best_ms(reps, [&] { s = k::par::dot(a, b); });
        row("dot", n, "par", reps, ms_p, s);
    }

    for (std::size_t n : {100000u, 1000000u, 4000000u}) {
        const auto u = random_vector(n, 23);
        const auto fu = random_vector(n, 29);
        const auto fd = random_vector(n, 31);
        std::vector<double> out(n);
        const double ms_s = best_ms(
            reps, [&] { k::serial::step_update(u, fu, 0.05, 0.9, fd, nullptr, out); });
        row("step_update", n, "serial", reps, ms_s, out[n / 2]);
        const double ms_p =
            best_ms(reps, [&] { k::par::step_update(u, fu, 0.05, 0.9, fd, nullptr, out); });
        row("step_update", n, "par", reps, ms_p, out[n / 2]);
    }

    for (std::size_t n : {100000u, 1000000u}) {
        const auto u = random_vector(n, 37);
        std::vector<double> out(n);
        const double ms_s = best_ms(reps, [&] { k::serial::arctan3(u, out); });
        row("arctan3", n, "serial", reps, ms_s, out[n / 2]);
        const double ms_p = best_ms(reps, [&] { k::par::arctan3(u, out); });
        row("arctan3", n, "par", reps, ms_p, out[n / 2]);
    }

    return 0;
}
