#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <string>

#include "simr/cli.hpp"
#include "simr/config.hpp"
#include "simr/io.hpp"

using namespace simr;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) n += c == '\n';
    return n;
}

} // namespace

TEST_CASE("solve writes the expected files and stops by discrepancy") {
    TempDir dir("simr_cli_solve");
    RunConfig cfg = parse_config_text("problem.noise = sinusoid\nproblem.delta_rel = 0.01\n");
    const int code = cli::cmd_solve(cfg, dir.str());
    CHECK(code == 0);

    const std::string trace = read_text_file(dir.file("trace.csv"));
    CHECK(trace.rfind("n,a_n,gamma_n,discrepancy,psi,u_norm\n", 0) == 0);
    CHECK(count_lines(trace) >= 3);

    const std::string solution = read_text_file(dir.file("solution.csv"));
    CHECK(solution.rfind("x,u_exact,u_final\n", 0) == 0);
    CHECK(count_lines(solution) == 101); // header + N rows

    const GridFunction final = read_vector(dir.file("final.txt"));
    CHECK(final.size() == 100);

    const std::string report = read_text_file(dir.file("report.txt"));
    CHECK(report.find("stop_reason = discrepancy") != std::string::npos);
    CHECK(report.find("n_delta = ") != std::string::npos);
    CHECK(report.find("rel_error = ") != std::string::npos);
}

TEST_CASE("solve exit codes: config error and degenerate stop") {
    TempDir dir("simr_cli_codes");

    // gamma above the admissible window
    RunConfig bad = parse_config_text("solver.gamma = 1.5\n");
    CHECK(cli::cmd_solve(bad, dir.str()) == 1);

    // delta_rel so large that u0 = 0 already meets the stop rule; note delta is
    // an absolute noise norm here, so C must absorb delta^(zeta-1) as well
    RunConfig degenerate = parse_config_text(
        "problem.noise = sinusoid\nproblem.delta_rel = 0.5\nstop.C = 2.5\nstop.zeta = 0.99\n");
    CHECK(cli::cmd_solve(degenerate, dir.str()) == 0);
    const std::string report = read_text_file(dir.file("report.txt"));
    CHECK(report.find("n_delta = 0") != std::string::npos);

    // iteration safeguard
    RunConfig capped = parse_config_text(
        "problem.noise = sinusoid\nproblem.delta_rel = 0.001\nsolver.max_iter = 2\n");
    CHECK(cli::cmd_solve(capped, dir.str()) == 2);
}

TEST_CASE("repeated runs are byte-identical") {
    TempDir dir_a("simr_cli_det_a");
    TempDir dir_b("simr_cli_det_b");
    RunConfig cfg = parse_config_text(
        "problem.delta_rel = 0.01\nproblem.seed = 7\n"
        "experiment.seeds = 1,2,3\nexperiment.delta_rels = 0.05,0.01\n");

    CHECK(cli::cmd_solve(cfg, dir_a.str()) == 0);
    CHECK(cli::cmd_solve(cfg, dir_b.str()) == 0);
    for (const char* name : {"trace.csv", "solution.csv", "final.txt", "report.txt"})
        CHECK(read_text_file(dir_a.file(name)) == read_text_file(dir_b.file(name)));

    CHECK(cli::cmd_table1(cfg, dir_a.str()) == 0);
    CHECK(cli::cmd_table1(cfg, dir_b.str()) == 0);
    CHECK(read_text_file(dir_a.file("summary.csv")) == read_text_file(dir_b.file("summary.csv")));

    // table1.csv carries a wall-clock column; everything else must match.
    auto strip_runtime = [](const std::string& text) {
        std::string out;
        std::size_t start = 0;
        while (start < text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string::npos) end = text.size();
            const std::string line = text.substr(start, end - start);
            out += line.substr(0, line.rfind(','));
            out += '\n';
            start = end + 1;
        }
        return out;
    };
    CHECK(strip_runtime(read_text_file(dir_a.file("table1.csv"))) ==
          strip_runtime(read_text_file(dir_b.file("table1.csv"))));

    // A different seed changes the solve outputs.
    RunConfig other = cfg;
    other.problem_seed = 8;
    TempDir dir_c("simr_cli_det_c");
    CHECK(cli::cmd_solve(other, dir_c.str()) == 0);
    CHECK(read_text_file(dir_a.file("trace.csv")) != read_text_file(dir_c.file("trace.csv")));
}

TEST_CASE("table1 sweep aggregates medians with reference baselines") {
    TempDir dir("simr_cli_table");
    RunConfig cfg = parse_config_text(
        "experiment.seeds = 1,2,3\nexperiment.delta_rels = 0.05,0.02\nproblem.N = 60\n");
    CHECK(cli::cmd_table1(cfg, dir.str()) == 0);

    const std::string table = read_text_file(dir.file("table1.csv"));
    CHECK(table.rfind("delta_rel,seed,n_delta,rel_error,runtime_ms\n", 0) == 0);
    CHECK(count_lines(table) == 1 + 2 * 3);

    const std::string summary = read_text_file(dir.file("summary.csv"));
    CHECK(summary.rfind(
              "delta_rel,runs,median_n_delta,median_rel_error,ref_n_delta,ref_rel_error\n",
              0) == 0);
    CHECK(summary.find(",5,0.166") != std::string::npos);  // 0.05 baseline row
    CHECK(summary.find(",8,0.108") != std::string::npos);  // 0.02 baseline row
}

TEST_CASE("table1 records per-row failures and continues") {
    TempDir dir("simr_cli_rowfail");
    // delta_rel = 0.7 pushes the absolute delta past C^(1/(1-zeta)), where
    // C*delta^zeta <= delta: those rows fail their precondition while the
    // 0.01 rows still run.
    RunConfig cfg = parse_config_text(
        "experiment.seeds = 1,2\nexperiment.delta_rels = 0.7,0.01\nproblem.N = 60\n");
    CHECK(cli::cmd_table1(cfg, dir.str()) == 0);
    const std::string table = read_text_file(dir.file("table1.csv"));
    CHECK(count_lines(table) == 1 + 4);
    CHECK(table.find("0.7,1,,,") != std::string::npos); // empty n_delta and rel_error
    const std::string summary = read_text_file(dir.file("summary.csv"));
    CHECK(summary.find("0.7,0,,,") != std::string::npos); // zero completed runs
}

TEST_CASE("solve with fixed-point start and trapezoid norms") {
    TempDir dir("simr_cli_fp");
    RunConfig cfg = parse_config_text(
        "problem.noise = sinusoid\nproblem.N = 60\nproblem.delta_rel = 0.01\n"
        "solver.u0 = fixed_point\nnorm.mode = trapezoid\n");
    CHECK(cli::cmd_solve(cfg, dir.str()) == 0);
    const std::string report = read_text_file(dir.file("report.txt"));
    CHECK(report.find("start_condition_ok = true") != std::string::npos);
}

TEST_CASE("table1 with one seed and one level degenerates to a single row") {
    TempDir dir("simr_cli_single");
    RunConfig cfg = parse_config_text(
        "experiment.seeds = 4\nexperiment.delta_rels = 0.01\nproblem.N = 60\n");
    CHECK(cli::cmd_table1(cfg, dir.str()) == 0);
    CHECK(count_lines(read_text_file(dir.file("table1.csv"))) == 2);
    CHECK(count_lines(read_text_file(dir.file("summary.csv"))) == 2);
}

TEST_CASE("verify passes on the built-in diagonal problem") {
    TempDir dir("simr_cli_verify_diag");
    RunConfig cfg = parse_config_text(
        "verify.problem = linear_spd\nverify.n_max = 30\nverify.tol = 1e-12\n"
        "problem.N = 12\nproblem.delta_rel = 0.02\n"
        "schedule.d = 3\nschedule.c = 5\nschedule.b = 0.5\nschedule.h = 1\n");
    CHECK(cli::cmd_verify(cfg, dir.str()) == 0);

    const std::string lemmas = read_text_file(dir.file("lemmas.csv"));
    CHECK(lemmas.rfind("name,n_range,max_violation,tolerance,pass\n", 0) == 0);
    CHECK(lemmas.find("residual_norm_identity") != std::string::npos);
    CHECK(lemmas.find("weighted_tail_bound") != std::string::npos);
    CHECK(lemmas.find("false") == std::string::npos);

    const std::string cert = read_text_file(dir.file("schedule_certificate.txt"));
    CHECK(cert.find("sufficient_parameter_box = true") != std::string::npos);
}

TEST_CASE("verify on the reference schedule still runs the asserted subset") {
    TempDir dir("simr_cli_verify_ref");
    RunConfig cfg = parse_config_text(
        "verify.problem = integral\nverify.n_max = 40\nproblem.N = 40\n");
    const int code = cli::cmd_verify(cfg, dir.str());
    CHECK(code == 0);
    const std::string cert = read_text_file(dir.file("schedule_certificate.txt"));
    CHECK(cert.find("sufficient_parameter_box = false") != std::string::npos);
    const std::string lemmas = read_text_file(dir.file("lemmas.csv"));
    CHECK(lemmas.find("not asserted") != std::string::npos);
}

TEST_CASE("solve accepts a vector file as u0 and as shift") {
    TempDir dir("simr_cli_u0");
    // Start from the exact solution: the discrepancy equals delta < C*delta^zeta,
    // so the run stops immediately at n_delta = 0.
    RunConfig warmup = parse_config_text("problem.noise = sinusoid\nproblem.N = 50\n");
    CHECK(cli::cmd_solve(warmup, dir.str()) == 0);

    RunConfig cfg = parse_config_text(
        "problem.noise = sinusoid\nproblem.N = 50\nproblem.delta_rel = 0.01\n");
    cfg.solver_u0 = dir.file("final.txt");
    cfg.solver_shift = dir.file("final.txt");
    CHECK(cli::cmd_solve(cfg, dir.str()) == 0);
    const std::string report = read_text_file(dir.file("report.txt"));
    CHECK(report.find("stop_reason = discrepancy") != std::string::npos);
}
