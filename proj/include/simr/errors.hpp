#ifndef SIMR_ERRORS_HPP
#define SIMR_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace simr {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Vector lengths do not agree, or a grid is too short for the requested mode.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An operator cannot be constructed from the given data.
class InvalidOperatorError : public Error {
public:
    using Error::Error;
};

/// Schedule parameters outside the admissible range (b in (0,1), c >= 1, d > 0, h > 0).
class InvalidScheduleError : public Error {
public:
    using Error::Error;
};

/// Bad run configuration: unknown key, unparsable value, or a violated precondition
/// detected before iterating.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Operation not supported by this operator (e.g. no derivative action attached).
class UnsupportedOperationError : public Error {
public:
    using Error::Error;
};

/// An iterate became non-finite. Carries the step index and the norm of the
/// last finite iterate.
class DivergenceError : public Error {
public:
    DivergenceError(std::string what, std::size_t step, double last_norm)
        : Error(std::move(what)), step_(step), last_norm_(last_norm) {}

    std::size_t step() const noexcept { return step_; }
    double last_norm() const noexcept { return last_norm_; }

private:
    std::size_t step_;
    double last_norm_;
};

/// A fixed-point or path solve hit its iteration cap. Carries the last residual
/// and, for path solves, the regularization value that failed.
class NonConvergenceError : public Error {
public:
    NonConvergenceError(std::string what, double last_residual, double a_value = 0.0)
        : Error(std::move(what)), last_residual_(last_residual), a_value_(a_value) {}

    double last_residual() const noexcept { return last_residual_; }
    double a_value() const noexcept { return a_value_; }

private:
    double last_residual_;
    double a_value_;
};

} // namespace simr

#endif // SIMR_ERRORS_HPP
