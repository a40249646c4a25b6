#ifndef SIMR_KERNELS_HPP
#define SIMR_KERNELS_HPP

#include <cstddef>
#include <span>

// Dense inner loops of the toolkit. Every kernel exists twice: a serial
// reference in kernels::serial and an OpenMP version in kernels::par that is
// engineered to return bitwise-identical results (row-wise parallelism, and a
// fixed-block summation order for reductions). The unprefixed entry points
// dispatch between the two based on a runtime switch and a size threshold.

namespace simr::kernels {

/// Enable or disable the OpenMP code paths at runtime. Defaults to enabled
/// when compiled with OpenMP support.
void set_parallel(bool enabled);
bool parallel_enabled();

/// Minimum element count (rows*cols for matvec, n otherwise) before the
/// dispatcher picks the parallel path. Small problems stay serial.
void set_parallel_threshold(std::size_t elements);
std::size_t parallel_threshold();

/// Number of entries accumulated per partial sum in dot products. Fixed so
/// the summation order never depends on the thread count.
inline constexpr std::size_t kDotBlock = 256;

namespace serial {

double dot(std::span<const double> a, std::span<const double> b);
double dot_weighted(std::span<const double> a, std::span<const double> b,
                    std::span<const double> w);

/// y = A x for row-major A (rows x cols).
void matvec(const double* a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y);

/// out = u - gamma * (fu + a*(u - shift) - f_delta); shift may be null.
void step_update(std::span<const double> u, std::span<const double> fu, double a,
                 double gamma, std::span<const double> f_delta, const double* shift,
                 std::span<double> out);

/// out = fu + a*(u - shift) - f_delta; shift may be null.
void residual(std::span<const double> u, std::span<const double> fu, double a,
              std::span<const double> f_delta, const double* shift,
              std::span<double> out);

/// out_i = atan(u_i)^3
void arctan3(std::span<const double> u, std::span<double> out);

/// out_i = 3*atan(u_i)^2 / (1 + u_i^2) * h_i  (pointwise derivative action)
void arctan3_derivative(std::span<const double> u, std::span<const double> h,
                        std::span<double> out);

} // namespace serial

namespace par {

double dot(std::span<const double> a, std::span<const double> b);
double dot_weighted(std::span<const double> a, std::span<const double> b,
                    std::span<const double> w);
void matvec(const double* a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y);
void step_update(std::span<const double> u, std::span<const double> fu, double a,
                 double gamma, std::span<const double> f_delta, const double* shift,
                 std::span<double> out);
void residual(std::span<const double> u, std::span<const double> fu, double a,
              std::span<const double> f_delta, const double* shift,
              std::span<double> out);
void arctan3(std::span<const double> u, std::span<double> out);
void arctan3_derivative(std::span<const double> u, std::span<const double> h,
                        std::span<double> out);

} // namespace par

// Dispatching entry points.
double dot(std::span<const double> a, std::span<const double> b);
double dot_weighted(std::span<const double> a, std::span<const double> b,
                    std::span<const double> w);
void matvec(const double* a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y);
void step_update(std::span<const double> u, std::span<const double> fu, double a,
                 double gamma, std::span<const double> f_delta, const double* shift,
                 std::span<double> out);
void residual(std::span<const double> u, std::span<const double> fu, double a,
              std::span<const double> f_delta, const double* shift,
              std::span<double> out);
void arctan3(std::span<const double> u, std::span<double> out);
void arctan3_derivative(std::span<const double> u, std::span<const double> h,
                        std::span<double> out);

} // namespace simr::kernels

#endif // SIMR_KERNELS_HPP
