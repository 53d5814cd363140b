#include "chns/stepper.hpp"

#include <array>
#include <cmath>
#include <complex>

#include "chns/errors.hpp"
#include "chns/kernels.hpp"

namespace chns {

BdfScheme bdf_scheme(int k) {
    switch (k) {
        case 1:
            return {1, 1.0, {1.0}, {1.0}};
        case 2:
            return {2, 3.0 / 2.0, {2.0, -1.0 / 2.0}, {2.0, -1.0}};
        case 3:
            return {3, 11.0 / 6.0, {3.0, -3.0 / 2.0, 1.0 / 3.0}, {3.0, -3.0, 1.0}};
        case 4:
            return {4,
                    25.0 / 12.0,
                    {4.0, -3.0, 4.0 / 3.0, -1.0 / 4.0},
                    {4.0, -6.0, 4.0, -1.0}};
        case 5:
            return {5,
                    137.0 / 60.0,
                    {5.0, -5.0, 10.0 / 3.0, -5.0 / 4.0, 1.0 / 5.0},
                    {5.0, -10.0, 10.0, -5.0, 1.0}};
        default:
            throw OrderError("BDF order must be in 1..5, got " + std::to_string(k));
    }
}

std::pair<double, double> compute_xi(double R, double dt, double tilde_dissipation,
                                     double shifted_energy) {
    if (!(R > 0)) throw StateError("auxiliary variable R must be positive");
    if (!(shifted_energy > 0))
        throw StateError("E + kappa0 must be positive (kappa0 misconfigured?)");
    double R_tilde = R / (1.0 + dt * tilde_dissipation / shifted_energy);
    return {R_tilde, R_tilde / shifted_energy};
}

double relaxation_factor(double xi, int k) {
    if (k < 1 || k > 5) throw OrderError("relaxation order must be in 1..5");
    double q = 1.0 - xi;
    if (k == 1) return 1.0 - q * q;  // exponent 2 on purpose
    double p = q;
    for (int i = 1; i < k; ++i) p *= q;
    return 1.0 - p;
}

double sav_update(double R, double shifted_energy) {
    if (!(R > 0)) throw StateError("auxiliary variable R must be positive");
    return std::min(R, shifted_energy);
}

namespace {

// lambda * int G(phi) from padded samples.
double bulk_G(const ScalarField& phi_fine, const ModelParams& p) {
    RealVec g(phi_fine.size());
    kern::ops().double_well(g.data(), phi_fine.data(),
                            1.0 / (4.0 * p.eps * p.eps), g.size());
    return kern::ops().sum(g.data(), g.size()) / double(g.size()) *
           phi_fine.grid.area();
}

double sq(double x) { return x * x; }

// Spectrum of lambda F'(phi) with the cubic evaluated alias-free on the
// factor-2 grid.
Spectrum lambda_f_prime_spectrum(const Spectrum& sphi, const Grid2& coarse,
                                 const Grid2& fine2, const ModelParams& prm) {
    ScalarField phif = to_fine(sphi, fine2);
    ScalarField fp(fine2);
    kern::ops().well_prime(fp.data(), phif.data(), 1.0 / (prm.eps * prm.eps),
                           prm.gamma, fp.size());
    Spectrum s = from_fine(fp, coarse);
    for (auto& z : s.c) z *= prm.lambda;
    return s;
}

}  // namespace

SolverState::SolverState(const Grid2& grid, const ModelParams& params, int order,
                         const ScalarField& phi0, const VectorField2& u0)
    : grid_(grid), params_(params), order_(order) {
    params_.validate();
    bdf_scheme(order);  // validates order
    if (!(phi0.grid == grid) || !(u0.grid() == grid))
        throw Error("initial data grid mismatch");

    Grid2 fine2 = padded_grid(grid, 2, 1);
    Spectrum sphi = forward(phi0);

    // mu0 from the chemical-potential definition on the initial data.
    Spectrum slam_fp = lambda_f_prime_spectrum(sphi, grid, fine2, params_);
    Spectrum smu(grid);
    const int cols = smu.cols();
    for (int j = 0; j < grid.ny; ++j) {
        double ky2 = sq(grid.ky(j));
        for (int i = 0; i < cols; ++i) {
            std::size_t idx = std::size_t(j) * cols + i;
            double k2 = sq(grid.kx(i)) + ky2;
            smu.c[idx] = params_.lambda * (k2 + params_.gamma) * sphi.c[idx] +
                         slam_fp.c[idx];
        }
    }
    ScalarField mu0 = inverse(smu);

    // p0 from the pressure Poisson problem with u~ replaced by u0; the
    // curl-curl term's divergence vanishes identically on the periodic grid.
    Grid2 fine32 = padded_grid(grid, 3, 2);
    Spectrum su1 = forward(u0.x), su2 = forward(u0.y);
    ScalarField muf = to_fine(smu, fine32);
    ScalarField phix = to_fine(deriv_x(sphi), fine32);
    ScalarField phiy = to_fine(deriv_y(sphi), fine32);
    ScalarField u1f = to_fine(su1, fine32), u2f = to_fine(su2, fine32);
    ScalarField u1x = to_fine(deriv_x(su1), fine32), u1y = to_fine(deriv_y(su1), fine32);
    ScalarField u2x = to_fine(deriv_x(su2), fine32), u2y = to_fine(deriv_y(su2), fine32);
    ScalarField F1(fine32), F2(fine32);
    auto& K = kern::ops();
    K.mul(F1.data(), muf.data(), phix.data(), F1.size());
    K.fnmadd(F1.data(), u1f.data(), u1x.data(), F1.size());
    K.fnmadd(F1.data(), u2f.data(), u1y.data(), F1.size());
    K.mul(F2.data(), muf.data(), phiy.data(), F2.size());
    K.fnmadd(F2.data(), u1f.data(), u2x.data(), F2.size());
    K.fnmadd(F2.data(), u2f.data(), u2y.data(), F2.size());
    Spectrum sF1 = from_fine(F1, grid), sF2 = from_fine(F2, grid);
    Spectrum sdiv(grid);
    for (int j = 0; j < grid.ny; ++j) {
        std::complex<double> iky(0, grid.ky(j));
        for (int i = 0; i < cols; ++i) {
            std::size_t idx = std::size_t(j) * cols + i;
            std::complex<double> ikx(0, grid.kx(i));
            sdiv.c[idx] = ikx * sF1.c[idx] + iky * sF2.c[idx];
            if (params_.chi != 0.0 && idx != 0)
                sdiv.c[idx] += params_.chi *
                               (params_.gravity[0] * ikx + params_.gravity[1] * iky) *
                               sphi.c[idx];
        }
    }
    ScalarField p0 = inverse(solve_poisson_zero_mean(sdiv));

    R_ = energy(phi0, u0, params_) + params_.kappa0;
    tilde_phi_hist_.push_front(phi0);
    tilde_u_hist_.push_front(u0);
    phi_hist_.push_front(phi0);
    mu_hist_.push_front(std::move(mu0));
    u_hist_.push_front(u0);
    p_hist_.push_front(std::move(p0));
}

int SolverState::effective_order() const {
    return std::min<int>(order_, int(phi_hist_.size()));
}

void SolverState::seed_history(const std::vector<HistoryLevel>& levels, double dt) {
    if (levels.empty() || int(levels.size()) != order_)
        throw Error("seed_history needs exactly order-k levels");
    tilde_phi_hist_.clear();
    tilde_u_hist_.clear();
    phi_hist_.clear();
    mu_hist_.clear();
    u_hist_.clear();
    p_hist_.clear();
    for (const auto& lv : levels) {  // oldest first; front ends up newest
        tilde_phi_hist_.push_front(lv.phi);
        tilde_u_hist_.push_front(lv.u);
        phi_hist_.push_front(lv.phi);
        mu_hist_.push_front(lv.mu);
        u_hist_.push_front(lv.u);
        p_hist_.push_front(lv.p);
    }
    n_ = long(levels.size()) - 1;
    t_ = double(n_) * dt;
    R_ = energy(levels.back().phi, levels.back().u, params_) + params_.kappa0;
}

void SolverState::push_level(ScalarField tphi, VectorField2 tu, ScalarField phi,
                             ScalarField mu, VectorField2 u, ScalarField p) {
    tilde_phi_hist_.push_front(std::move(tphi));
    tilde_u_hist_.push_front(std::move(tu));
    phi_hist_.push_front(std::move(phi));
    mu_hist_.push_front(std::move(mu));
    u_hist_.push_front(std::move(u));
    p_hist_.push_front(std::move(p));
    while (int(phi_hist_.size()) > order_) {
        tilde_phi_hist_.pop_back();
        tilde_u_hist_.pop_back();
        phi_hist_.pop_back();
        mu_hist_.pop_back();
        u_hist_.pop_back();
        p_hist_.pop_back();
    }
}

StepDiagnostics SolverState::step(double dt, const Forcing* forcing) {
    if (!(dt > 0)) throw Error("dt must be positive");
    const int k = effective_order();
    const BdfScheme sch = bdf_scheme(k);
    auto& K = kern::ops();
    const ModelParams& prm = params_;
    const Grid2& g = grid_;
    const int cols = g.nx / 2 + 1;
    const Grid2 fine32 = padded_grid(g, 3, 2);
    const Grid2 fine2 = padded_grid(g, 2, 1);
    const double tnew = t_ + dt;

    auto comb_s = [&](const std::deque<ScalarField>& h, const std::vector<double>& w) {
        ScalarField out(g);
        std::array<const double*, 5> ptrs{};
        for (int j = 0; j < k; ++j) ptrs[j] = h[j].data();
        K.lincomb(out.data(), w.data(), ptrs.data(), k, out.size());
        return out;
    };
    auto comb_v = [&](const std::deque<VectorField2>& h, const std::vector<double>& w) {
        VectorField2 out(g);
        std::array<const double*, 5> px{}, py{};
        for (int j = 0; j < k; ++j) {
            px[j] = h[j].x.data();
            py[j] = h[j].y.data();
        }
        K.lincomb(out.x.data(), w.data(), px.data(), k, out.x.size());
        K.lincomb(out.y.data(), w.data(), py.data(), k, out.y.size());
        return out;
    };

    // Extrapolations: B_k over relaxed histories, A_k over tilde histories.
    ScalarField Bphi = comb_s(phi_hist_, sch.b_weights);
    ScalarField Bmu = comb_s(mu_hist_, sch.b_weights);
    ScalarField Bp = comb_s(p_hist_, sch.b_weights);
    VectorField2 Bu = comb_v(u_hist_, sch.b_weights);
    ScalarField Aphit = comb_s(tilde_phi_hist_, sch.a_weights);
    VectorField2 Aut = comb_v(tilde_u_hist_, sch.a_weights);

    Spectrum sBphi = forward(Bphi);
    Spectrum sBu1 = forward(Bu.x), sBu2 = forward(Bu.y);

    Spectrum sfphi, sfu1, sfu2;
    const bool has_fphi = forcing && forcing->phi;
    const bool has_fu = forcing && forcing->u;
    if (has_fphi) sfphi = forward(forcing->phi(tnew));
    if (has_fu) {
        VectorField2 fu = forcing->u(tnew);
        sfu1 = forward(fu.x);
        sfu2 = forward(fu.y);
    }

    // --- Phase solve: (alpha/dt + M lam Lap^2 - M lam gamma Lap) phi~ = rhs.
    ScalarField phix = to_fine(deriv_x(sBphi), fine32);
    ScalarField phiy = to_fine(deriv_y(sBphi), fine32);
    ScalarField u1f = to_fine(sBu1, fine32), u2f = to_fine(sBu2, fine32);
    ScalarField conv(fine32);
    K.mul(conv.data(), u1f.data(), phix.data(), conv.size());
    K.fmadd(conv.data(), u2f.data(), phiy.data(), conv.size());
    Spectrum sconv = from_fine(conv, g);
    // For a solenoidal velocity the advective term has zero mean; the
    // splitting velocity is only approximately divergence-free, and its
    // residual mean would leak mass into phi. Project it out.
    sconv.c[0] = 0.0;
    Spectrum slam_fp = lambda_f_prime_spectrum(sBphi, g, fine2, prm);

    Spectrum srhs = forward(Aphit);
    for (int j = 0; j < g.ny; ++j) {
        double ky2 = sq(g.ky(j));
        for (int i = 0; i < cols; ++i) {
            std::size_t idx = std::size_t(j) * cols + i;
            double k2 = sq(g.kx(i)) + ky2;
            srhs.c[idx] = srhs.c[idx] / dt - sconv.c[idx] -
                          prm.mobility * k2 * slam_fp.c[idx];
            if (has_fphi) srhs.c[idx] += sfphi.c[idx];
        }
    }
    Spectrum sphit = solve_ch_operator(sch.alpha / dt, prm.mobility * prm.lambda,
                                       prm.mobility * prm.lambda * prm.gamma, srhs);
    Spectrum smut(g);
    for (int j = 0; j < g.ny; ++j) {
        double ky2 = sq(g.ky(j));
        for (int i = 0; i < cols; ++i) {
            std::size_t idx = std::size_t(j) * cols + i;
            double k2 = sq(g.kx(i)) + ky2;
            smut.c[idx] =
                prm.lambda * (k2 + prm.gamma) * sphit.c[idx] + slam_fp.c[idx];
        }
    }

    // --- Momentum solve: (alpha/dt - nu Lap) u~ = rhs, componentwise.
    Spectrum sBmu = forward(Bmu), sBp = forward(Bp);
    ScalarField muf = to_fine(sBmu, fine32);
    ScalarField u1x = to_fine(deriv_x(sBu1), fine32), u1y = to_fine(deriv_y(sBu1), fine32);
    ScalarField u2x = to_fine(deriv_x(sBu2), fine32), u2y = to_fine(deriv_y(sBu2), fine32);
    ScalarField r1(fine32), r2(fine32);
    K.mul(r1.data(), muf.data(), phix.data(), r1.size());
    K.fnmadd(r1.data(), u1f.data(), u1x.data(), r1.size());
    K.fnmadd(r1.data(), u2f.data(), u1y.data(), r1.size());
    K.mul(r2.data(), muf.data(), phiy.data(), r2.size());
    K.fnmadd(r2.data(), u1f.data(), u2x.data(), r2.size());
    K.fnmadd(r2.data(), u2f.data(), u2y.data(), r2.size());
    Spectrum sr1 = from_fine(r1, g), sr2 = from_fine(r2, g);
    Spectrum sA1 = forward(Aut.x), sA2 = forward(Aut.y);
    for (int j = 0; j < g.ny; ++j) {
        std::complex<double> iky(0, g.ky(j));
        for (int i = 0; i < cols; ++i) {
            std::size_t idx = std::size_t(j) * cols + i;
            std::complex<double> ikx(0, g.kx(i));
            sr1.c[idx] += sA1.c[idx] / dt - ikx * sBp.c[idx];
            sr2.c[idx] += sA2.c[idx] / dt - iky * sBp.c[idx];
            if (prm.chi != 0.0 && idx != 0) {
                // chi (B_k phi - mean) g, explicit buoyancy
                sr1.c[idx] += prm.chi * prm.gravity[0] * sBphi.c[idx];
                sr2.c[idx] += prm.chi * prm.gravity[1] * sBphi.c[idx];
            }
            if (has_fu) {
                sr1.c[idx] += sfu1.c[idx];
                sr2.c[idx] += sfu2.c[idx];
            }
        }
    }
    Spectrum sut1 = solve_helmholtz(sch.alpha / dt, prm.nu, sr1);
    Spectrum sut2 = solve_helmholtz(sch.alpha / dt, prm.nu, sr2);

    // --- Auxiliary-variable solve and relaxation.
    double tilde_diss = prm.mobility * sq(h1_seminorm(smut)) +
                        prm.nu * (sq(h1_seminorm(sBu1)) + sq(h1_seminorm(sBu2)));
    ScalarField phit_fine2 = to_fine(sphit, fine2);
    double E_tilde = 0.5 * (sq(l2_norm(sut1)) + sq(l2_norm(sut2))) +
                     0.5 * prm.lambda * sq(h1_seminorm(sphit)) +
                     prm.lambda * bulk_G(phit_fine2, prm);
    auto [R_tilde, xi] = compute_xi(R_, dt, tilde_diss, E_tilde + prm.kappa0);
    double eta = relaxation_factor(xi, k);

    auto scaled = [&](const Spectrum& s) {
        Spectrum out = s;
        for (auto& z : out.c) z *= eta;
        return out;
    };
    Spectrum sphin = scaled(sphit), smun = scaled(smut);
    Spectrum su1n = scaled(sut1), su2n = scaled(sut2);

    // --- Pressure update from relaxed fields. The nu curl(curl u~) term's
    // divergence cancels identically mode-by-mode on the periodic grid,
    // so it contributes nothing here.
    ScalarField phixn = to_fine(deriv_x(sphin), fine32);
    ScalarField phiyn = to_fine(deriv_y(sphin), fine32);
    ScalarField mufn = to_fine(smun, fine32);
    ScalarField u1fn = to_fine(su1n, fine32), u2fn = to_fine(su2n, fine32);
    ScalarField u1xn = to_fine(deriv_x(su1n), fine32), u1yn = to_fine(deriv_y(su1n), fine32);
    ScalarField u2xn = to_fine(deriv_x(su2n), fine32), u2yn = to_fine(deriv_y(su2n), fine32);
    ScalarField F1(fine32), F2(fine32);
    K.mul(F1.data(), mufn.data(), phixn.data(), F1.size());
    K.fnmadd(F1.data(), u1fn.data(), u1xn.data(), F1.size());
    K.fnmadd(F1.data(), u2fn.data(), u1yn.data(), F1.size());
    K.mul(F2.data(), mufn.data(), phiyn.data(), F2.size());
    K.fnmadd(F2.data(), u1fn.data(), u2xn.data(), F2.size());
    K.fnmadd(F2.data(), u2fn.data(), u2yn.data(), F2.size());
    Spectrum sF1 = from_fine(F1, g), sF2 = from_fine(F2, g);
    Spectrum sdiv(g);
    for (int j = 0; j < g.ny; ++j) {
        std::complex<double> iky(0, g.ky(j));
        for (int i = 0; i < cols; ++i) {
            std::size_t idx = std::size_t(j) * cols + i;
            std::complex<double> ikx(0, g.kx(i));
            sdiv.c[idx] = ikx * sF1.c[idx] + iky * sF2.c[idx];
            if (prm.chi != 0.0 && idx != 0)
                sdiv.c[idx] += prm.chi *
                               (prm.gravity[0] * ikx + prm.gravity[1] * iky) *
                               sphin.c[idx];
            if (has_fu) sdiv.c[idx] += ikx * sfu1.c[idx] + iky * sfu2.c[idx];
        }
    }
    Spectrum spn = solve_poisson_zero_mean(sdiv);

    // --- SAV min-update and diagnostics.
    RealVec phin_fine(phit_fine2.size());
    K.scale(phin_fine.data(), phit_fine2.data(), eta, phin_fine.size());
    ScalarField phin_fine_field(fine2);
    phin_fine_field.samples = std::move(phin_fine);
    double bulk = bulk_G(phin_fine_field, prm);
    double l2_phin = l2_norm(sphin);
    double E_new = 0.5 * (sq(l2_norm(su1n)) + sq(l2_norm(su2n))) +
                   0.5 * prm.lambda * sq(h1_seminorm(sphin)) + prm.lambda * bulk;
    double lam_int_F =
        prm.lambda * bulk - 0.5 * prm.lambda * prm.gamma * sq(l2_phin);
    if (!(lam_int_F + prm.kappa0 > 0))
        throw StateError("lambda int F + kappa0 <= 0 at t=" + std::to_string(tnew) +
                         "; increase kappa0");
    double R_new = sav_update(R_, E_new + prm.kappa0);

    Spectrum sdivu(g);
    for (int j = 0; j < g.ny; ++j) {
        std::complex<double> iky(0, g.ky(j));
        for (int i = 0; i < cols; ++i) {
            std::size_t idx = std::size_t(j) * cols + i;
            sdivu.c[idx] = std::complex<double>(0, g.kx(i)) * su1n.c[idx] +
                           iky * su2n.c[idx];
        }
    }
    ScalarField divu = inverse(sdivu);

    StepDiagnostics d;
    d.t = tnew;
    d.step = n_ + 1;
    d.xi = xi;
    d.eta = eta;
    d.R_tilde = R_tilde;
    d.R = R_new;
    d.original_energy = E_new;
    d.modified_gap = std::fabs(R_new - (E_new + prm.kappa0));
    d.dissipation = prm.mobility * sq(h1_seminorm(smun)) +
                    prm.nu * (sq(h1_seminorm(su1n)) + sq(h1_seminorm(su2n)));
    d.mass = sphin.c[0].real();
    d.max_div_u = K.max_abs(divu.data(), divu.size());

    if (!std::isfinite(E_new) || !std::isfinite(d.max_div_u) ||
        !std::isfinite(d.dissipation))
        throw StateError("solution blew up (NaN/Inf) at t=" + std::to_string(tnew));

    push_level(inverse(sphit), {inverse(sut1), inverse(sut2)}, inverse(sphin),
               inverse(smun), {inverse(su1n), inverse(su2n)}, inverse(spn));
    R_ = R_new;
    t_ = tnew;
    ++n_;
    return d;
}

void warm_up(SolverState& state, double dt, const Forcing* forcing) {
    while (!state.warm()) state.step(dt, forcing);
}

}  // namespace chns
