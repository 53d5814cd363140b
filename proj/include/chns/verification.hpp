#pragma once

#include <functional>
#include <string>
#include <vector>

#include "chns/stepper.hpp"

namespace chns {

// Closed-form exact solution with exact time derivatives, used to build
// compensating forcings for temporal convergence studies.
struct ManufacturedSolution {
    std::function<double(double, double, double)> phi;    // (x, y, t)
    std::function<double(double, double, double)> u1, u2;
    std::function<double(double, double, double)> p;
    std::function<double(double, double, double)> phi_t;
    std::function<double(double, double, double)> u1_t, u2_t;

    // phi = cos(t) cos(pi x) cos(pi y)
    // u   = pi sin(t) (sin^2(pi x) sin(2 pi y), -sin(2 pi x) sin^2(pi y))
    // p   = sin(t) cos(pi x) sin(pi y)
    static ManufacturedSolution reference_case();
};

struct ExactSample {
    ScalarField phi;
    VectorField2 u;
    ScalarField p;
};

ExactSample sample(const ManufacturedSolution& ms, double t, const Grid2& grid);

struct ForcingFields {
    ScalarField f_phi;
    VectorField2 f_u;
};

// Residual forcings built with the solver's own discrete operators, so the
// exact solution satisfies the continuous system exactly on resolved modes.
ForcingFields forcing_fields(const ManufacturedSolution& ms, double t,
                             const ModelParams& params, const Grid2& grid);

// Forcing closure for SolverState::step.
Forcing make_forcing(const ManufacturedSolution& ms, const ModelParams& params,
                     const Grid2& grid);

struct ErrorRecord {
    double phi_l2 = 0, phi_h1 = 0;
    double u_l2 = 0, u_h1 = 0;
    double p_l2 = 0, p_h1 = 0;
};

ErrorRecord error_norms(const SolverState& state, const ManufacturedSolution& ms);

// Fill the state's history rings with exact samples at t = 0..(k-1)*dt.
void seed_exact_history(SolverState& state, const ManufacturedSolution& ms, double dt);

struct ConvergenceRow {
    double dt = 0;
    ErrorRecord err;
    // log2 error ratios vs the previous (coarser) row; NaN on the first row.
    ErrorRecord order;
};

struct ConvergenceConfig {
    Grid2 grid{50, 50, 2.0, 2.0, -1.0, -1.0};
    ModelParams params;  // defaults overwritten by reference_params()
    double T = 0.2;
    bool exact_seeded = true;

    static ConvergenceConfig reference();  // the paper's convergence setup
};

// Runs the manufactured problem to T for each dt and reports errors and
// observed orders between consecutive ladder entries.
std::vector<ConvergenceRow> convergence_study(int k, const std::vector<double>& dts,
                                              const ConvergenceConfig& cfg);

// CSV emission (columns: k, dt, errors, observed orders).
void write_convergence_csv(const std::string& path, int k,
                           const std::vector<ConvergenceRow>& rows);

}  // namespace chns
