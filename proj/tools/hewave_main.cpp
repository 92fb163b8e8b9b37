// command line front end: traveling hydroelastic wave branches
//
//   hewave linear  [--config c.json] [--kmax 10]
//   hewave branch  [--config c.json] [--out dir] [--seed-k 1] [--seed-sign +1]
//                  [--max-points N] [--tol T]
//   hewave surface [--config c.json] [--out dir] [--atilde-list 0.1,0.2] [--jobs J]
//   hewave verify  <branch.json> [--config c.json]

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "hewave/errors.hpp"
#include "hewave/io.hpp"

namespace {

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size())
            throw hew::config_error("bad number in list: '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw hew::config_error("empty value list");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"periodic traveling hydroelastic waves: linear spectrum, "
                 "branch continuation, parameter sweeps"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    app.add_option("--config", config_path, "JSON config file")
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory (overrides config)");

    auto* sub_linear = app.add_subcommand("linear", "print linear wave speeds");
    int kmax = 10;
    sub_linear->add_option("--kmax", kmax, "largest wavenumber to report");

    auto* sub_branch = app.add_subcommand("branch", "continue one solution branch");
    int seed_k = 0, seed_sign = 0, max_points = 0;
    double tol = 0.0;
    auto add_branch_opts = [&](CLI::App* s) {
        s->add_option("--seed-k", seed_k, "bifurcation wavenumber");
        s->add_option("--seed-sign", seed_sign, "speed sign at onset (+1 or -1)");
        s->add_option("--max-points", max_points, "branch point budget");
        s->add_option("--tol", tol, "solver residual tolerance");
    };
    add_branch_opts(sub_branch);

    auto* sub_surface =
        app.add_subcommand("surface", "branches over a list of sheet mass ratios");
    std::string atilde_arg;
    int jobs = 0;
    sub_surface->add_option("--atilde-list", atilde_arg,
                            "comma separated sheet mass ratio values");
    sub_surface->add_option("--jobs", jobs, "parallel branch workers");
    add_branch_opts(sub_surface);

    auto* sub_verify =
        app.add_subcommand("verify", "recheck residuals of a stored branch");
    std::string branch_path;
    sub_verify->add_option("file", branch_path, "branch JSON file")
        ->required()
        ->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        hew::RunConfig cfg;
        if (!config_path.empty()) cfg = hew::load_config(config_path);
        if (!out_dir.empty()) cfg.output_path = out_dir;
        if (seed_k != 0) cfg.seed_k = seed_k;
        if (seed_sign != 0) {
            if (seed_sign != 1 && seed_sign != -1)
                throw hew::config_error("--seed-sign must be +1 or -1");
            cfg.seed_sign = seed_sign;
        }
        if (max_points != 0) cfg.continuation.max_points = max_points;
        if (tol != 0.0) cfg.continuation.solver.tol = tol;
        if (jobs != 0) cfg.jobs = jobs;
        if (!atilde_arg.empty()) cfg.atilde_list = parse_double_list(atilde_arg);

        if (*sub_linear) return hew::cmd_linear(cfg, kmax, std::cout);
        if (*sub_branch) return hew::cmd_branch(cfg, std::cout);
        if (*sub_surface) return hew::cmd_surface(cfg, std::cout);
        if (*sub_verify) return hew::cmd_verify(cfg, branch_path, std::cout);
    } catch (const hew::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
