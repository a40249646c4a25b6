// Command-line front end: solve | table1 | verify, driven by a flat
// "key = value" config file. See README.md for the key reference.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "simr/cli.hpp"
#include "simr/config.hpp"
#include "simr/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"iterative regularization solver for ill-posed monotone operator equations"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "./out";
    bool out_given = false;
    std::int64_t seed_override = -1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "config file (key = value lines)")->required();
        sub->add_option("--out", out_dir, "output directory")->each([&](const std::string&) {
            out_given = true;
        });
        sub->add_option("--seed", seed_override, "overrides problem.seed");
    };

    CLI::App* solve = app.add_subcommand("solve", "single run with trace output");
    CLI::App* table1 = app.add_subcommand("table1", "delta_rel x seed sweep with medians");
    CLI::App* verify = app.add_subcommand("verify", "schedule certificate and path inequalities");
    add_common(solve);
    add_common(table1);
    add_common(verify);

    CLI11_PARSE(app, argc, argv);

    try {
        simr::RunConfig cfg = simr::parse_config_file(config_path);
        if (seed_override >= 0) cfg.problem_seed = static_cast<std::uint64_t>(seed_override);
        const std::string dir = out_given ? out_dir : cfg.output_dir;

        if (solve->parsed()) return simr::cli::cmd_solve(cfg, dir);
        if (table1->parsed()) return simr::cli::cmd_table1(cfg, dir);
        return simr::cli::cmd_verify(cfg, dir);
    } catch (const simr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
