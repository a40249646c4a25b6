#include "simr/kernels.hpp"

#include <atomic>
#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace simr::kernels {

namespace {

#ifdef _OPENMP
std::atomic<bool> g_parallel{true};
#else
std::atomic<bool> g_parallel{false};
#endif
std::atomic<std::size_t> g_threshold{1u << 15};

bool use_par(std::size_t elements) {
#ifdef _OPENMP
    return g_parallel.load(std::memory_order_relaxed) &&
           elements >= g_threshold.load(std::memory_order_relaxed);
#else
    (void)elements;
    return false;
#endif
}

// Blocked summation shared by the serial and parallel dot products. Partial
// sums are taken over fixed kDotBlock-sized chunks and combined in chunk
// order, so the result is independent of how chunks are assigned to threads.
inline double block_sum(std::span<const double> partials) {
    double s = 0.0;
    for (double p : partials) s += p;
    return s;
}

inline std::size_t num_blocks(std::size_t n) { return (n + kDotBlock - 1) / kDotBlock; }

inline double dot_block(std::span<const double> a, std::span<const double> b,
                        std::size_t begin, std::size_t end) {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += a[i] * b[i];
    return s;
}

inline double dot_block_weighted(std::span<const double> a, std::span<const double> b,
                                 std::span<const double> w, std::size_t begin,
                                 std::size_t end) {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += w[i] * a[i] * b[i];
    return s;
}

} // namespace

void set_parallel(bool enabled) { g_parallel.store(enabled, std::memory_order_relaxed); }
bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }
void set_parallel_threshold(std::size_t elements) {
    g_threshold.store(elements, std::memory_order_relaxed);
}
std::size_t parallel_threshold() { return g_threshold.load(std::memory_order_relaxed); }

namespace serial {

double dot(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    const std::size_t nb = num_blocks(n);
    std::vector<double> partial(nb);
    for (std::size_t k = 0; k < nb; ++k) {
        const std::size_t begin = k * kDotBlock;
        const std::size_t end = begin + kDotBlock < n ? begin + kDotBlock : n;
        partial[k] = dot_block(a, b, begin, end);
    }
    return block_sum(partial);
}

double dot_weighted(std::span<const double> a, std::span<const double> b,
                    std::span<const double> w) {
    const std::size_t n = a.size();
    const std::size_t nb = num_blocks(n);
    std::vector<double> partial(nb);
    for (std::size_t k = 0; k < nb; ++k) {
        const std::size_t begin = k * kDotBlock;
        const std::size_t end = begin + kDotBlock < n ? begin + kDotBlock : n;
        partial[k] = dot_block_weighted(a, b, w, begin, end);
    }
    return block_sum(partial);
}

void matvec(const double* a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < rows; ++i) {
        const double* row = a + i * cols;
        double s = 0.0;
        for (std::size_t j = 0; j < cols; ++j) s += row[j] * x[j];
        y[i] = s;
    }
}

void step_update(std::span<const double> u, std::span<const double> fu, double a,
                 double gamma, std::span<const double> f_delta, const double* shift,
                 std::span<double> out) {
    const std::size_t n = u.size();
    if (shift) {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = u[i] - gamma * (fu[i] + a * (u[i] - shift[i]) - f_delta[i]);
    } else {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = u[i] - gamma * (fu[i] + a * u[i] - f_delta[i]);
    }
}

void residual(std::span<const double> u, std::span<const double> fu, double a,
              std::span<const double> f_delta, const double* shift,
              std::span<double> out) {
    const std::size_t n = u.size();
    if (shift) {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = fu[i] + a * (u[i] - shift[i]) - f_delta[i];
    } else {
        for (std::size_t i = 0; i < n; ++i) out[i] = fu[i] + a * u[i] - f_delta[i];
    }
}

void arctan3(std::span<const double> u, std::span<double> out) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double t = std::atan(u[i]);
        out[i] = t * t * t;
    }
}

void arctan3_derivative(std::span<const double> u, std::span<const double> h,
                        std::span<double> out) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double t = std::atan(u[i]);
        out[i] = 3.0 * t * t / (1.0 + u[i] * u[i]) * h[i];
    }
}

} // namespace serial

namespace par {

#ifdef _OPENMP

double dot(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    const std::size_t nb = num_blocks(n);
    std::vector<double> partial(nb);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(nb); ++k) {
        const std::size_t begin = static_cast<std::size_t>(k) * kDotBlock;
        const std::size_t end = begin + kDotBlock < n ? begin + kDotBlock : n;
        partial[static_cast<std::size_t>(k)] = dot_block(a, b, begin, end);
    }
    return block_sum(partial);
}

double dot_weighted(std::span<const double> a, std::span<const double> b,
                    std::span<const double> w) {
    const std::size_t n = a.size();
    const std::size_t nb = num_blocks(n);
    std::vector<double> partial(nb);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(nb); ++k) {
        const std::size_t begin = static_cast<std::size_t>(k) * kDotBlock;
        const std::size_t end = begin + kDotBlock < n ? begin + kDotBlock : n;
        partial[static_cast<std::size_t>(k)] = dot_block_weighted(a, b, w, begin, end);
    }
    return block_sum(partial);
}

void matvec(const double* a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(rows); ++i) {
        const double* row = a + static_cast<std::size_t>(i) * cols;
        double s = 0.0;
        for (std::size_t j = 0; j < cols; ++j) s += row[j] * x[j];
        y[static_cast<std::size_t>(i)] = s;
    }
}

void step_update(std::span<const double> u, std::span<const double> fu, double a,
                 double gamma, std::span<const double> f_delta, const double* shift,
                 std::span<double> out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
    if (shift) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            out[i] = u[i] - gamma * (fu[i] + a * (u[i] - shift[i]) - f_delta[i]);
    } else {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            out[i] = u[i] - gamma * (fu[i] + a * u[i] - f_delta[i]);
    }
}

void residual(std::span<const double> u, std::span<const double> fu, double a,
              std::span<const double> f_delta, const double* shift,
              std::span<double> out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
    if (shift) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            out[i] = fu[i] + a * (u[i] - shift[i]) - f_delta[i];
    } else {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = fu[i] + a * u[i] - f_delta[i];
    }
}

void arctan3(std::span<const double> u, std::span<double> out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const double t = std::atan(u[i]);
        out[i] = t * t * t;
    }
}

void arctan3_derivative(std::span<const double> u, std::span<const double> h,
                        std::span<double> out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const double t = std::atan(u[i]);
        out[i] = 3.0 * t * t / (1.0 + u[i] * u[i]) * h[i];
    }
}

#else // !_OPENMP: parallel entry points fall back to the serial reference.

double dot(std::span<const double> a, std::span<const double> b) { return serial::dot(a, b); }
double dot_weighted(std::span<const double> a, std::span<const double> b,
                    std::span<const double> w) {
    return serial::dot_weighted(a, b, w);
}
void matvec(const double* a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y) {
    serial::matvec(a, rows, cols, x, y);
}
void step_update(std::span<const double> u, std::span<const double> fu, double a,
                 double gamma, std::span<const double> f_delta, const double* shift,
                 std::span<double> out) {
    serial::step_update(u, fu, a, gamma, f_delta, shift, out);
}
void residual(std::span<const double> u, std::span<const double> fu, double a,
              std::span<const double> f_delta, const double* shift,
              std::span<double> out) {
    serial::residual(u, fu, a, f_delta, shift, out);
}
void arctan3(std::span<const double> u, std::span<double> out) { serial::arctan3(u, out); }
void arctan3_derivative(std::span<const double> u, std::span<const double> h,
                        std::span<double> out) {
    serial::arctan3_derivative(u, h, out);
}

#endif

} // namespace par

double dot(std::span<const double> a, std::span<const double> b) {
    return use_par(a.size()) ? par::dot(a, b) : serial::dot(a, b);
}

double dot_weighted(std::span<const double> a, std::span<const double> b,
                    std::span<const double> w) {
    return use_par(a.size()) ? par::dot_weighted(a, b, w) : serial::dot_weighted(a, b, w);
}

void matvec(const double* a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y) {
    if (use_par(rows * cols))
        par::matvec(a, rows, cols, x, y);
    else
        serial::matvec(a, rows, cols, x, y);
}

void step_update(std::span<const double> u, std::span<const double> fu, double a,
                 double gamma, std::span<const double> f_delta, const double* shift,
                 std::span<double> out) {
    if (use_par(u.size()))
        par::step_update(u, fu, a, gamma, f_delta, shift, out);
    else
        serial::step_update(u, fu, a, gamma, f_delta, shift, out);
}

void residual(std::span<const double> u, std::span<const double> fu, double a,
              std::span<const double> f_delta, const double* shift,
              std::span<double> out) {
    if (use_par(u.size()))
        par::residual(u, fu, a, f_delta, shift, out);
    else
        serial::residual(u, fu, a, f_delta, shift, out);
}

void arctan3(std::span<const double> u, std::span<double> out) {
    if (use_par(u.size()))
        par::arctan3(u, out);
    else
        serial::arctan3(u, out);
}

void arctan3_derivative(std::span<const double> u, std::span<const double> h,
                        std::span<double> out) {
    if (use_par(u.size()))
        par::arctan3_derivative(u, h, out);
    else
        serial::arctan3_derivative(u, h, out);
}

} // namespace simr::kernels
