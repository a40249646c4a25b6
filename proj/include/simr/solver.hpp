#ifndef SIMR_SOLVER_HPP
#define SIMR_SOLVER_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "simr/errors.hpp"
#include "simr/grid.hpp"
#include "simr/operators.hpp"
#include "simr/schedule.hpp"

namespace simr {

enum class U0Source {
    Zero,
    Given,
    FixedPoint,
};

enum class GammaRuleKind {
    /// gamma_n = h, the schedule step (default).
    ConstantH,
    /// gamma_n = value for all n.
    Constant,
    /// gamma_n = min(cap, 2/(sigma_inverse + 2 a_n)); cap <= 0 means no cap.
    Adaptive,
};

struct GammaRule {
    GammaRuleKind kind = GammaRuleKind::ConstantH;
    double value = 0.0;
};

struct SolverConfig {
    /// Stopping rule ||F(u_n) - f_delta|| <= C * delta^zeta with C*delta^zeta > delta.
    double C = 1.01;
    double zeta = 0.99;
    /// Threshold factor for the start condition check; <= 0 means C/2.
    double theta = 0.0;

    GammaRule gamma;
    std::size_t max_iter = 100000;

    U0Source u0_source = U0Source::Zero;
    GridFunction u0;
    std::optional<GridFunction> shift;

    NormMode norm_mode = NormMode::Euclidean;

    /// Norm of the regularized solution at a_0, when available from the oracle;
    /// enables the second branch of the start condition check.
    std::optional<double> v0_norm;
};

enum class StopReason {
    Discrepancy,
    MaxIter,
};

/// Full trace of a solver run. All traces have one entry per visited index n,
/// including the stopping one.
struct RunReport {
    std::optional<std::size_t> n_delta;
    StopReason stop_reason = StopReason::MaxIter;

    std::vector<double> discrepancy_trace; ///< ||F(u_n) - f_delta||
    std::vector<double> residual_trace;    ///< psi_n = ||F(u_n) + a_n (u_n - shift) - f_delta||
    std::vector<double> a_trace;
    std::vector<double> gamma_trace;
    std::vector<double> u_norm_trace;

    GridFunction final_iterate;
    std::optional<double> rel_error;

    ScheduleCertificate certificate_echo;
    bool start_condition_ok = false;
    /// True when both the schedule certificate and the start condition support
    /// the minimal-norm convergence claim; otherwise the run is only claimed to
    /// converge to a solution.
    bool minimal_norm_claim = false;

    double delta = 0.0;
    double threshold = 0.0; ///< C * delta^zeta
    double max_u_norm = 0.0;
    bool ball_exceeded = false; ///< max ||u_n|| left the certified ball (warning only)
};

/// Divergence during a run; carries whatever trace was recorded up to the bad step.
class SolverDivergenceError : public DivergenceError {
public:
    SolverDivergenceError(std::string what, std::size_t step, double last_norm,
                          RunReport partial)
        : DivergenceError(std::move(what), step, last_norm), partial_(std::move(partial)) {}

    const RunReport& partial_report() const noexcept { return partial_; }

private:
    RunReport partial_;
};

/// One step of the iteration: u - gamma * (F(u) + a*(u - shift) - f_delta),
/// with shift treated as zero when absent. Exactly one operator evaluation.
GridFunction step(const Operator& op, const GridFunction& u, double a, double gamma,
                  const GridFunction& f_delta, const GridFunction* shift = nullptr);

/// Same update from a precomputed F(u); performs no operator evaluation.
GridFunction step_from(const GridFunction& u, const GridFunction& fu, double a,
                       double gamma, const GridFunction& f_delta,
                       const GridFunction* shift = nullptr);

/// Runs the iteration with the discrepancy-principle stop. The discrepancy is
/// evaluated at u_n before stepping, so n_delta = 0 is representable; a start
/// iterate already within the threshold returns immediately with n_delta = 0.
/// Throws ConfigError when C*delta^zeta <= delta or the step-size rule violates
/// h <= gamma_n <= 2/(sigma_inverse + 2 a_n).
RunReport run(const Operator& op, const GridFunction& f_delta, double delta,
              const ScheduleParams& s, const SolverConfig& cfg,
              const GridFunction* reference = nullptr);

/// Same iteration on a tabulated schedule. The run additionally stops with the
/// iteration safeguard when the table runs out.
RunReport run(const Operator& op, const GridFunction& f_delta, double delta,
              const TabulatedSchedule& t, const SolverConfig& cfg,
              const GridFunction* reference = nullptr);

/// Fixed-point iteration v <- v - gamma*(F(v) + a0*v - f_delta) until the
/// residual drops to tol. The map is a contraction for
/// 0 < gamma < 2/(sigma_inverse + 2 a0). Throws NonConvergenceError at max_iter.
GridFunction fixed_point_initializer(const Operator& op, double a0,
                                     const GridFunction& f_delta, const GridFunction& v0,
                                     double gamma, double tol, std::size_t max_iter,
                                     NormMode mode = NormMode::Euclidean);

/// Start condition for the minimal-norm convergence claim: true iff
/// psi_0 = ||F(u0) + a0*(u0 - shift) - f_delta|| <= theta * delta^zeta (theta < C)
/// or psi_0 <= (1/8) * a0 * v0_norm. Pass a non-finite v0_norm to skip the
/// second branch.
bool check_start_condition(const GridFunction& u0, const Operator& op, double a0,
                           const GridFunction& f_delta, double delta,
                           const SolverConfig& cfg, double v0_norm);

} // namespace simr

#endif // SIMR_SOLVER_HPP
