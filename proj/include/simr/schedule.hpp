#ifndef SIMR_SCHEDULE_HPP
#define SIMR_SCHEDULE_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace simr {

/// Power-law regularization schedule a(t) = d / (c + t)^b sampled at t = n*h.
/// For d > 0, c >= 1, b in (0,1) the function is positive, strictly decreasing
/// to zero, and nu(t) = |a'(t)| / a(t)^2 = (b/d) (c+t)^(b-1) is strictly
/// decreasing as well.
struct ScheduleParams {
    double d = 0.0;
    double c = 0.0;
    double b = 0.0;
    double h = 0.0;

    double a(double t) const;
    double a_at(std::size_t n) const { return a(static_cast<double>(n) * h); }
    double a0() const { return a(0.0); }
    double nu(double t) const;
    double nu0() const { return nu(0.0); }
};

/// Closed-form admissibility certificate for a power-law schedule.
///  - admissible: the decay conditions hold (always true for validated params).
///  - minimal_norm_conditions: a(0)*h <= 2 and nu(0) <= 1/10. When these hold
///    (together with a suitable start), the stopped iterate converges to the
///    minimal-norm solution; otherwise only convergence to a solution is
///    claimed, and the run report is downgraded accordingly.
///  - sufficient_parameter_box: b in (0,1), c >= 5, 10 b / c^(1-b) <= d <= 2 c^b,
///    and a(0)*h <= 2 -- a sufficient (checkable in one glance) condition for
///    the above.
/// Certificates never block a run.
struct ScheduleCertificate {
    bool admissible = false;
    bool minimal_norm_conditions = false;
    bool sufficient_parameter_box = false;
    std::vector<std::string> notes;
};

/// Validates the parameters and evaluates the certificate exactly (no sampling).
/// Throws InvalidScheduleError when b is outside (0,1), c < 1, d <= 0 or h <= 0.
std::pair<ScheduleParams, ScheduleCertificate> make_power_schedule(double d, double c,
                                                                   double b, double h);

/// Recomputes the certificate for already validated parameters.
ScheduleCertificate certify(const ScheduleParams& s);

double a_at(const ScheduleParams& s, std::size_t n);

/// Largest admissible step size 2 / (sigma_inverse + 2 a_n); the run must keep
/// h <= gamma_n <= this bound.
double gamma_max(double sigma_inverse, double a_n);

/// phi_n = h * sum_{i=0..n} a_i; strictly increasing in n.
double phi(const ScheduleParams& s, std::size_t n);

/// User-supplied schedule given by its sampled values a_0, a_1, ... A run on a
/// tabulated schedule stops with the iteration safeguard when the table runs
/// out. Certification is by sampling the table, not closed form.
struct TabulatedSchedule {
    std::vector<double> values;
    double h = 0.0;

    /// Throws ConfigError past the end of the table.
    double a_at(std::size_t n) const;
    double a0() const { return a_at(0); }
    std::size_t last_index() const { return values.size() - 1; }
};

/// Sampled certificate: positive strictly decreasing values whose discrete
/// nu_n = (1/a_{n+1} - 1/a_n)/h is non-increasing. The closed-form parameter
/// box applies to power laws only and is reported false with a note.
ScheduleCertificate certify_sampled(const TabulatedSchedule& t);

} // namespace simr

#endif // SIMR_SCHEDULE_HPP
