#ifndef SIMR_CLI_HPP
#define SIMR_CLI_HPP

#include <string>

#include "simr/config.hpp"

namespace simr::cli {

/// Runs a single solve of the integral testbed and writes trace.csv, final.txt,
/// solution.csv and report.txt into out_dir. Returns 0 when the discrepancy
/// stop fired, 2 on the iteration safeguard, 1 on a configuration error.
int cmd_solve(const RunConfig& cfg, const std::string& out_dir);

/// Sweeps delta_rel x seed, writing table1.csv (one row per run) and
/// summary.csv (medians per delta_rel next to the published reference values).
/// Individual run failures are recorded per row and the sweep continues.
int cmd_table1(const RunConfig& cfg, const std::string& out_dir);

/// Certifies the schedule and checks the regularization-path inequalities,
/// writing lemmas.csv and schedule_certificate.txt. Returns 0 iff every
/// asserted inequality passes, 3 when the path solver fails to converge,
/// 1 on a configuration error.
int cmd_verify(const RunConfig& cfg, const std::string& out_dir);

/// Reference (n_delta, rel_error) for the published table, or nullptr when
/// delta_rel is not one of the six canonical levels.
struct ReferenceRow {
    double delta_rel;
    int n_delta;
    double rel_error;
};
const ReferenceRow* reference_row(double delta_rel);

} // namespace simr::cli

#endif // SIMR_CLI_HPP
