#include "simr/schedule.hpp"

#include <cmath>

#include "simr/errors.hpp"

namespace simr {

double ScheduleParams::a(double t) const { return d / std::pow(c + t, b); }

double ScheduleParams::nu(double t) const { return b / d * std::pow(c + t, b - 1.0); }

namespace {

void validate(double d, double c, double b, double h) {
    if (!(b > 0.0) || !(b < 1.0))
        throw InvalidScheduleError("schedule: b must lie in (0,1), got " + std::to_string(b));
    if (!(c >= 1.0))
        throw InvalidScheduleError("schedule: c must be >= 1, got " + std::to_string(c));
    if (!(d > 0.0))
        throw InvalidScheduleError("schedule: d must be positive, got " + std::to_string(d));
    if (!(h > 0.0))
        throw InvalidScheduleError("schedule: h must be positive, got " + std::to_string(h));
}

} // namespace

ScheduleCertificate certify(const ScheduleParams& s) {
    ScheduleCertificate cert;
    // Decay conditions hold for every validated power law.
    cert.admissible = s.d > 0.0 && s.c >= 1.0 && s.b > 0.0 && s.b < 1.0 && s.h > 0.0;

    const double a0h = s.a0() * s.h;
    const double nu0 = s.nu0();
    cert.minimal_norm_conditions = a0h <= 2.0 && nu0 <= 0.1;
    if (a0h > 2.0)
        cert.notes.push_back("a(0)*h = " + std::to_string(a0h) + " exceeds 2");
    if (nu0 > 0.1)
        cert.notes.push_back("nu(0) = " + std::to_string(nu0) + " exceeds 1/10");

    const double lower = 10.0 * s.b / std::pow(s.c, 1.0 - s.b);
    const double upper = 2.0 * std::pow(s.c, s.b);
    cert.sufficient_parameter_box =
        s.c >= 5.0 && lower <= s.d && s.d <= upper && a0h <= 2.0;
    if (!cert.sufficient_parameter_box) {
        if (s.c < 5.0) cert.notes.push_back("parameter box needs c >= 5");
        if (s.d < lower || s.d > upper)
            cert.notes.push_back("parameter box needs " + std::to_string(lower) +
                                 " <= d <= " + std::to_string(upper) + ", got d = " +
                                 std::to_string(s.d));
    }
    if (cert.minimal_norm_conditions)
        cert.notes.push_back("minimal-norm convergence conditions hold");
    else
        cert.notes.push_back(
            "minimal-norm convergence conditions violated; run converges to a solution, "
            "not necessarily the minimal-norm one");
    return cert;
}

std::pair<ScheduleParams, ScheduleCertificate> make_power_schedule(double d, double c,
                                                                   double b, double h) {
    validate(d, c, b, h);
    ScheduleParams s{d, c, b, h};
    return {s, certify(s)};
}

double a_at(const ScheduleParams& s, std::size_t n) { return s.a_at(n); }

double gamma_max(double sigma_inverse, double a_n) {
    return 2.0 / (sigma_inverse + 2.0 * a_n);
}

double phi(const ScheduleParams& s, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i <= n; ++i) sum += s.a_at(i);
    return s.h * sum;
}

double TabulatedSchedule::a_at(std::size_t n) const {
    if (n >= values.size())
        throw ConfigError("tabulated schedule: index " + std::to_string(n) +
                          " past the end of a table of " + std::to_string(values.size()));
    return values[n];
}

ScheduleCertificate certify_sampled(const TabulatedSchedule& t) {
    ScheduleCertificate cert;
    cert.sufficient_parameter_box = false;
    cert.notes.push_back("tabulated schedule: certificate sampled from " +
                         std::to_string(t.values.size()) + " values");
    cert.notes.push_back("closed-form parameter box applies to power laws only");

    if (t.values.size() < 2 || !(t.h > 0.0)) {
        cert.notes.push_back("need at least 2 values and a positive step");
        return cert;
    }

    bool decreasing = t.values.front() > 0.0;
    bool nu_monotone = true;
    double prev_nu = -1.0;
    for (std::size_t n = 0; n + 1 < t.values.size(); ++n) {
        const double a = t.values[n];
        const double a1 = t.values[n + 1];
        if (!(a1 > 0.0) || !(a1 < a)) {
            decreasing = false;
            break;
        }
        const double nu = (1.0 / a1 - 1.0 / a) / t.h;
        if (prev_nu >= 0.0 && nu > prev_nu * (1.0 + 1e-12)) nu_monotone = false;
        prev_nu = nu;
    }
    cert.admissible = decreasing && nu_monotone;
    if (!decreasing) cert.notes.push_back("values are not positive strictly decreasing");
    if (!nu_monotone) cert.notes.push_back("discrete nu_n is not non-increasing");

    if (cert.admissible) {
        const double nu0 = (1.0 / t.values[1] - 1.0 / t.values[0]) / t.h;
        cert.minimal_norm_conditions = t.values[0] * t.h <= 2.0 && nu0 <= 0.1;
        if (!cert.minimal_norm_conditions)
            cert.notes.push_back(
                "minimal-norm convergence conditions violated (sampled); run converges to "
                "a solution, not necessarily the minimal-norm one");
    }
    return cert;
}

} // namespace simr
