#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chns/errors.hpp"
#include "chns/io.hpp"
#include "chns/kernels.hpp"

namespace {

// Merge command-line flags on top of an optional config file.
struct Cli {
    std::string config;
    chns::RunConfig cfg;
    // Flag staging (CLI11 writes here; only flags the user passed are applied).
    std::string scenario, out;
    int order = 0, nx = 0, ny = 0;
    double dt = 0, tend = 0, kappa0 = 0;
    long snap_every = -1, diag_every = -1, max_steps = -1;
    unsigned long long seed = 0;
};

void add_run_flags(CLI::App* app, Cli& c) {
    app->add_option("--config", c.config, "key=value config file");
    app->add_option("--scenario", c.scenario, "preset name (see `presets`)");
    app->add_option("--order", c.order, "time-stepping order (1..5)");
    app->add_option("--nx", c.nx, "grid points in x");
    app->add_option("--ny", c.ny, "grid points in y");
    app->add_option("--dt", c.dt, "time step");
    app->add_option("--tend", c.tend, "final time");
    app->add_option("--out", c.out, "output directory");
    app->add_option("--seed", c.seed, "RNG seed for noisy initial data");
    app->add_option("--snap-every", c.snap_every, "snapshot cadence in steps (0 = off)");
    app->add_option("--diag-every", c.diag_every, "diagnostics cadence in steps");
    app->add_option("--kappa0", c.kappa0, "energy shift constant");
    app->add_option("--max-steps", c.max_steps, "stop after this many steps (0 = off)");
}

int apply_flags(const CLI::App* app, Cli& c) {
    try {
        if (!c.config.empty()) c.cfg = chns::parse_config_file(c.config);
        if (app->count("--scenario")) c.cfg.scenario = c.scenario;
        if (app->count("--order")) c.cfg.order = c.order;
        if (app->count("--nx")) c.cfg.nx = c.nx;
        if (app->count("--ny")) c.cfg.ny = c.ny;
        if (app->count("--dt")) c.cfg.dt = c.dt;
        if (app->count("--tend")) c.cfg.tend = c.tend;
        if (app->count("--out")) c.cfg.out = c.out;
        if (app->count("--seed")) c.cfg.seed = c.seed;
        if (app->count("--snap-every")) c.cfg.snap_every = c.snap_every;
        if (app->count("--diag-every")) c.cfg.diag_every = c.diag_every;
        if (app->count("--kappa0")) c.cfg.kappa0 = c.kappa0;
        if (app->count("--max-steps")) c.cfg.max_steps = c.max_steps;
        if (!c.cfg.scenario && !c.cfg.nx) {
            std::fprintf(stderr, "config error: --scenario or --config required\n");
            return chns::kExitConfig;
        }
    } catch (const chns::Error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return chns::kExitConfig;
    }
    return chns::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudo-spectral two-phase flow simulator"};
    app.require_subcommand(1);

    Cli c;
    auto* run_cmd = app.add_subcommand("run", "time-march a scenario");
    add_run_flags(run_cmd, c);

    int conv_order = 1;
    std::vector<double> conv_dts;
    std::string conv_out = "convergence.csv";
    auto* conv_cmd = app.add_subcommand("converge", "temporal convergence study");
    conv_cmd->add_option("--order", conv_order, "scheme order")->required();
    conv_cmd->add_option("--dts", conv_dts, "time-step ladder (coarse to fine)");
    conv_cmd->add_option("--out", conv_out, "output CSV path");

    std::string energy_in, energy_out = "energy.csv";
    auto* energy_cmd =
        app.add_subcommand("energy", "extract energy/R curves from diagnostics");
    energy_cmd->add_option("diagnostics", energy_in, "diagnostics.csv from a run")
        ->required();
    energy_cmd->add_option("--out", energy_out, "output CSV path");

    auto* presets_cmd = app.add_subcommand("presets", "list scenario presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? chns::kExitOk : chns::kExitConfig;
    }

    if (presets_cmd->parsed()) {
        for (const auto& name : chns::preset_names()) std::printf("%s\n", name.c_str());
        return chns::kExitOk;
    }
    if (run_cmd->parsed()) {
        int rc = apply_flags(run_cmd, c);
        return rc != chns::kExitOk ? rc : chns::run(c.cfg);
    }
    if (conv_cmd->parsed()) {
        if (conv_dts.empty()) conv_dts = {1e-2, 5e-3, 2.5e-3, 1.25e-3};
        return chns::converge(conv_order, conv_dts, conv_out);
    }
    if (energy_cmd->parsed()) return chns::energy_curves(energy_in, energy_out);
    return chns::kExitConfig;
}
