#ifndef SIMR_ORACLE_HPP
#define SIMR_ORACLE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "simr/grid.hpp"
#include "simr/operators.hpp"
#include "simr/schedule.hpp"

namespace simr {

/// High-accuracy solution V of the regularized equation F(V) + a V = f_delta,
/// with the residual actually achieved.
struct RegularizedSolution {
    double a = 0.0;
    GridFunction V;
    double residual = 0.0;
    std::size_t iterations = 0;
    double tol = 0.0;
};

/// Solves F(V) + a V = f_delta to the given residual tolerance by the damped
/// fixed-point map V <- V - gamma (F(V) + a V - f_delta) with
/// gamma = 1/(sigma_inverse + 2a), strictly inside the contraction window.
/// The solution is unique, so the start point only affects the iteration count;
/// pass one to warm-start. Throws NonConvergenceError past max_iter.
RegularizedSolution solve_regularized(const Operator& op, double a,
                                      const GridFunction& f_delta, double tol,
                                      NormMode mode = NormMode::Euclidean,
                                      const GridFunction* start = nullptr,
                                      std::size_t max_iter = 1000000);

/// V_n solving F(V_n) + a_n V_n = f_delta for n = 0..n_max, warm-started along
/// the path (set warm_start = false to re-solve each point from zero).
std::vector<RegularizedSolution> regularized_path(const Operator& op,
                                                  const ScheduleParams& s,
                                                  const GridFunction& f_delta,
                                                  std::size_t n_max, double tol,
                                                  NormMode mode = NormMode::Euclidean,
                                                  bool warm_start = true);

/// Estimate of the minimal-norm solution: V_a for the smallest a in the list,
/// with the pairwise gaps ||V_{a_k} - V_{a_{k+1}}|| reported so the caller can
/// judge convergence. gaps_decreasing = false is a warning, not an error.
struct MinimalNormEstimate {
    GridFunction estimate;
    std::vector<double> gaps;
    bool gaps_decreasing = true;
};

MinimalNormEstimate minimal_norm_estimate(const Operator& op, const GridFunction& f,
                                          std::span<const double> a_list, double tol,
                                          NormMode mode = NormMode::Euclidean);

/// One inequality checked along the regularization path. max_violation and
/// tolerance are reported at the index where violation/tolerance peaks, so
/// pass <=> max_violation <= tolerance. Checks whose hypotheses do not apply
/// are recorded with asserted = false and an explanatory note.
struct LemmaCheck {
    std::string name;
    std::size_t n_begin = 0;
    std::size_t n_end = 0;
    double max_violation = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    bool asserted = true;
    std::string note;
};

struct LemmaReport {
    std::vector<LemmaCheck> checks;

    bool all_asserted_pass() const {
        for (const auto& c : checks)
            if (c.asserted && !c.pass) return false;
        return true;
    }
    const LemmaCheck* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

/// Solves the regularization path V_0..V_{n_max} to tolerance tol and checks,
/// with l_n = ||F(V_n) - f_delta|| and k_n = ||V_n||:
///   residual_decreasing          l_n strictly decreasing
///   norm_increasing              k_n strictly increasing
///   residual_norm_identity       l_n = a_n k_n (certifies oracle accuracy)
///   norm_upper_bound             k_n <= y_norm + delta/a_n
///   step_difference_bound        ||V_n - V_{n+1}|| <= ((a_n-a_{n+1})/a_n) k_{n+1}
///   residual_dominated_by_start  a_n k_n <= ||F(0) - f_delta||
///   residual_limit_bound         l_n <= a_n y_norm + delta
///   weighted_tail_bound          exp-weighted tail sum <= (1/2) a_n k_n;
///                                asserted only when the schedule certificate's
///                                minimal_norm_conditions hold, recorded otherwise
/// The monotonicity checks require ||F(0) - f_delta|| > 0 and are skipped
/// (asserted = false) in the degenerate case. All slacks scale with tol.
LemmaReport verify_path_inequalities(const Operator& op, const ScheduleParams& s,
                                     const GridFunction& f_delta, double delta,
                                     double y_norm, std::size_t n_max, double tol,
                                     NormMode mode = NormMode::Euclidean);

} // namespace simr

#endif // SIMR_ORACLE_HPP
