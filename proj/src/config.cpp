#include "simr/config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "simr/errors.hpp"
#include "simr/io.hpp"

namespace simr {

RunConfig::RunConfig() : schedule_d(0.1) {}

NormMode RunConfig::parsed_norm_mode() const {
    if (norm_mode == "euclidean") return NormMode::Euclidean;
    if (norm_mode == "trapezoid") return NormMode::TrapezoidWeighted;
    throw ConfigError("norm.mode must be 'euclidean' or 'trapezoid', got '" + norm_mode + "'");
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::size_t parse_count(const std::string& key, const std::string& value) {
    std::size_t out = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size())
        throw ConfigError(key + ": not a count: '" + value + "'");
    return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::uint64_t out = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size())
        throw ConfigError(key + ": not an integer: '" + value + "'");
    return out;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> parts;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");

        if (key == "schedule.d") cfg.schedule_d = parse_double(value);
        else if (key == "schedule.c") cfg.schedule_c = parse_double(value);
        else if (key == "schedule.b") cfg.schedule_b = parse_double(value);
        else if (key == "schedule.h") cfg.schedule_h = parse_double(value);
        else if (key == "stop.C") cfg.stop_C = parse_double(value);
        else if (key == "stop.zeta") cfg.stop_zeta = parse_double(value);
        else if (key == "stop.theta") cfg.stop_theta = parse_double(value);
        else if (key == "solver.max_iter") cfg.solver_max_iter = parse_count(key, value);
        else if (key == "solver.gamma") cfg.solver_gamma = value;
        else if (key == "solver.u0") cfg.solver_u0 = value;
        else if (key == "solver.shift") cfg.solver_shift = value;
        else if (key == "norm.mode") cfg.norm_mode = value;
        else if (key == "problem.N") cfg.problem_N = parse_count(key, value);
        else if (key == "problem.noise") cfg.problem_noise = value;
        else if (key == "problem.delta_rel") cfg.problem_delta_rel = parse_double(value);
        else if (key == "problem.seed") cfg.problem_seed = parse_u64(key, value);
        else if (key == "problem.midpoint") cfg.problem_midpoint = parse_double(value);
        else if (key == "output.dir") cfg.output_dir = value;
        else if (key == "experiment.seeds") {
            cfg.experiment_seeds.clear();
            for (const auto& item : split_list(value))
                cfg.experiment_seeds.push_back(parse_u64(key, item));
            if (cfg.experiment_seeds.empty()) throw ConfigError("experiment.seeds: empty list");
        } else if (key == "experiment.delta_rels") {
            cfg.experiment_delta_rels.clear();
            for (const auto& item : split_list(value))
                cfg.experiment_delta_rels.push_back(parse_double(item));
            if (cfg.experiment_delta_rels.empty())
                throw ConfigError("experiment.delta_rels: empty list");
        } else if (key == "verify.problem") cfg.verify_problem = value;
        else if (key == "verify.n_max") cfg.verify_n_max = parse_count(key, value);
        else if (key == "verify.tol") cfg.verify_tol = parse_double(value);
        else
            throw ConfigError("unknown config key: '" + key + "'");
    }

    if (cfg.problem_noise != "gaussian" && cfg.problem_noise != "sinusoid")
        throw ConfigError("problem.noise must be 'gaussian' or 'sinusoid'");
    if (cfg.verify_problem != "integral" && cfg.verify_problem != "linear_spd")
        throw ConfigError("verify.problem must be 'integral' or 'linear_spd'");
    cfg.parsed_norm_mode(); // validates
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    return parse_config_text(read_text_file(path));
}

} // namespace simr
