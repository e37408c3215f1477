#include <iostream>

#include <CLI11.hpp>

#include "haar/cli/commands.hpp"

int main(int argc, char** argv) {
    haar::RunConfig cfg;
    CLI::App app{"Certified Haar measures and integrals on compact groups"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* cmd) {
        cmd->add_option("--group", cfg.group, "finite, cyclic:k, circle, torus:d, su2, so3, o3, u2");
        cmd->add_option("--method", cfg.method, "generic or quadrature");
        cmd->add_option("--function", cfg.function, "builtin:<name> or values:<file>");
        cmd->add_option("--effort-cap", cfg.effort_cap, "evaluation budget (0 = default)");
        cmd->add_option("--cayley", cfg.cayley, "Cayley table file for --group finite");
    };

    auto* integrate = app.add_subcommand("integrate", "Haar integral to within 2^-n");
    common(integrate);
    integrate->add_option("--precision,-n", cfg.precision, "n");

    auto* measure = app.add_subcommand("measure", "measure of a closed ball to within 2^-n");
    common(measure);
    measure->add_option("--precision,-n", cfg.precision, "n");
    measure->add_option("--center", cfg.center, "'e', an element index or a circle coordinate");
    measure->add_option("--radius", cfg.radius, "dyadic radius, e.g. 0.125 or 1/8");

    auto* packing = app.add_subcommand("packing", "maximum 2^-n packing");
    common(packing);
    packing->add_option("--precision,-n", cfg.precision, "n");

    auto* bench = app.add_subcommand("bench", "timings as CSV");
    common(bench);
    bench->add_option("--n-min", cfg.n_min, "smallest n");
    bench->add_option("--n-max", cfg.n_max, "largest n");
    bench->add_option("--repeats", cfg.repeats, "runs per n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (integrate->parsed()) return haar::run_integrate(cfg, std::cout, std::cerr);
    if (measure->parsed()) {
        if (measure->count("--method") == 0) cfg.method = "generic";
        return haar::run_measure(cfg, std::cout, std::cerr);
    }
    if (packing->parsed()) return haar::run_packing(cfg, std::cout, std::cerr);
    return haar::run_bench(cfg, std::cout, std::cerr);
}
