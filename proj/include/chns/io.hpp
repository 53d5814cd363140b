#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chns/scenarios.hpp"

namespace chns {

// Flat key=value run configuration ('#' comments, one pair per line).
// A scenario preset supplies defaults; explicit keys override it.
struct RunConfig {
    std::optional<std::string> scenario;
    std::optional<int> order;
    std::optional<int> nx, ny;
    std::optional<double> lx, ly, x0, y0;
    std::optional<double> dt, tend;
    std::string out = "out";
    long snap_every = 0;  // 0 disables field snapshots
    long diag_every = 1;
    std::uint64_t seed = 20260824;
    std::optional<double> kappa0;
    std::optional<double> lambda, mobility, eps, gamma, nu, chi, gx, gy;
    std::optional<double> radius;
    long max_steps = 0;  // 0 = run to tend
    bool debug_checks = false;

    // Resolved scenario (preset merged with overrides).
    Scenario resolve() const;
};

RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Exit codes shared by run() and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBlowUp = 3;
inline constexpr int kExitIo = 4;

// Executes the configured run: diagnostics.csv, optional field snapshots,
// run_manifest.json. Returns an exit code instead of throwing for blow-up
// and I/O failures.
int run(const RunConfig& cfg);

// Raw float64 snapshot with a one-line text header "nx ny Lx Ly t".
void write_snapshot(const std::string& path, const ScalarField& f, double t);
void write_snapshot(const std::string& path, const VectorField2& v, double t);
ScalarField read_snapshot(const std::string& path, double* t_out = nullptr);

// Convergence driver: runs verification::convergence_study for order k and
// writes the table to out_path. Prints one line per ladder entry.
int converge(int k, const std::vector<double>& dts, const std::string& out_path);

// Re-emit step,t,E,R from an existing diagnostics.csv.
int energy_curves(const std::string& diagnostics_csv, const std::string& out_path);

}  // namespace chns
