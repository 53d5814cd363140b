#pragma once

#include <deque>
#include <functional>
#include <utility>
#include <vector>

#include "chns/model.hpp"

namespace chns {

// IMEX BDF-k weights. alpha is the leading coefficient; a_weights act on
// the implicit history (tilde fields), b_weights extrapolate the relaxed
// history. Front entry applies to the newest level.
struct BdfScheme {
    int order;
    double alpha;
    std::vector<double> a_weights;
    std::vector<double> b_weights;
};

BdfScheme bdf_scheme(int k);  // throws OrderError outside 1..5

struct StepDiagnostics {
    double t = 0;
    long step = 0;
    double xi = 0, eta = 0;
    double R_tilde = 0, R = 0;
    double original_energy = 0;
    double modified_gap = 0;  // |R - (E + kappa0)|
    double dissipation = 0;   // M |grad mu|^2 + nu |grad u|^2, relaxed fields
    double mass = 0;          // mean(phi)
    double max_div_u = 0;
};

// Optional additive right sides for the phase and momentum equations,
// evaluated at t^{n+1}.
struct Forcing {
    std::function<ScalarField(double)> phi;
    std::function<VectorField2(double)> u;
};

// Closed-form auxiliary-variable solve: given R^n, the time step, the
// tilde dissipation M|grad mu~|^2 + nu|grad B_k(u)|^2 and the shifted
// tilde energy E~ + kappa0, return (R_tilde, xi).
std::pair<double, double> compute_xi(double R, double dt, double tilde_dissipation,
                                     double shifted_energy);

// eta = 1 - (1 - xi)^2 for k = 1 (deliberate exponent), 1 - (1 - xi)^k
// for k = 2..5.
double relaxation_factor(double xi, int k);

// R^{n+1} = min(R^n, E^{n+1} + kappa0).
double sav_update(double R, double shifted_energy);

// One exact history level for verification-mode seeding.
struct HistoryLevel {
    ScalarField phi;
    ScalarField mu;
    VectorField2 u;
    ScalarField p;
};

// Owns the GSAV time-marching state: ring buffers of tilde fields
// (phi~, u~) consumed by A_k, relaxed fields (phi, mu, u, p) consumed by
// B_k, and the scalar auxiliary variable R.
class SolverState {
public:
    SolverState(const Grid2& grid, const ModelParams& params, int order,
                const ScalarField& phi0, const VectorField2& u0);

    // Replace the startup ramp with exact history at t = 0..(k-1)*dt,
    // oldest first. R is set to the shifted energy of the newest level.
    void seed_history(const std::vector<HistoryLevel>& levels, double dt);

    StepDiagnostics step(double dt, const Forcing* forcing = nullptr);

    const ScalarField& phi() const { return phi_hist_.front(); }
    const ScalarField& mu() const { return mu_hist_.front(); }
    const VectorField2& u() const { return u_hist_.front(); }
    const ScalarField& p() const { return p_hist_.front(); }
    const ScalarField& tilde_phi() const { return tilde_phi_hist_.front(); }
    const VectorField2& tilde_u() const { return tilde_u_hist_.front(); }
    double R() const { return R_; }
    double time() const { return t_; }
    long step_index() const { return n_; }
    const Grid2& grid() const { return grid_; }
    const ModelParams& params() const { return params_; }
    int order() const { return order_; }
    // Order actually used by the next step (ramps 1..order during warm-up).
    int effective_order() const;
    bool warm() const { return effective_order() == order_; }

private:
    Grid2 grid_;
    ModelParams params_;
    int order_;
    double t_ = 0;
    long n_ = 0;
    double R_ = 0;
    std::deque<ScalarField> tilde_phi_hist_;
    std::deque<VectorField2> tilde_u_hist_;
    std::deque<ScalarField> phi_hist_, mu_hist_, p_hist_;
    std::deque<VectorField2> u_hist_;

    void push_level(ScalarField tphi, VectorField2 tu, ScalarField phi,
                    ScalarField mu, VectorField2 u, ScalarField p);
};

// Take startup steps until the history ring holds the full order-k depth.
void warm_up(SolverState& state, double dt, const Forcing* forcing = nullptr);

}  // namespace chns
