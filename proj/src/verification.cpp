#include "chns/verification.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>

#include "chns/errors.hpp"
#include "chns/kernels.hpp"

namespace chns {

namespace {
constexpr double pi = std::numbers::pi;
double sq(double x) { return x * x; }
}  // namespace

ManufacturedSolution ManufacturedSolution::reference_case() {
    ManufacturedSolution ms;
    ms.phi = [](double x, double y, double t) {
        return std::cos(t) * std::cos(pi * x) * std::cos(pi * y);
    };
    ms.phi_t = [](double x, double y, double t) {
        return -std::sin(t) * std::cos(pi * x) * std::cos(pi * y);
    };
    ms.u1 = [](double x, double y, double t) {
        return pi * std::sin(t) * sq(std::sin(pi * x)) * std::sin(2 * pi * y);
    };
    ms.u2 = [](double x, double y, double t) {
        return -pi * std::sin(t) * std::sin(2 * pi * x) * sq(std::sin(pi * y));
    };
    ms.u1_t = [](double x, double y, double t) {
        return pi * std::cos(t) * sq(std::sin(pi * x)) * std::sin(2 * pi * y);
    };
    ms.u2_t = [](double x, double y, double t) {
        return -pi * std::cos(t) * std::sin(2 * pi * x) * sq(std::sin(pi * y));
    };
    ms.p = [](double x, double y, double t) {
        return std::sin(t) * std::cos(pi * x) * std::sin(pi * y);
    };
    return ms;
}

ExactSample sample(const ManufacturedSolution& ms, double t, const Grid2& grid) {
    auto at = [&](const std::function<double(double, double, double)>& f) {
        return ScalarField::from_function(grid,
                                          [&](double x, double y) { return f(x, y, t); });
    };
    return {at(ms.phi), {at(ms.u1), at(ms.u2)}, at(ms.p)};
}

namespace {

// Discrete chemical potential -lam Lap phi + lam G'(phi), cubic dealiased.
Spectrum mu_spectrum(const Spectrum& sphi, const ModelParams& prm) {
    const Grid2& g = sphi.grid;
    Grid2 fine2 = padded_grid(g, 2, 1);
    ScalarField phif = to_fine(sphi, fine2);
    ScalarField gp(fine2);
    kern::ops().well_prime(gp.data(), phif.data(), 1.0 / (prm.eps * prm.eps), 0.0,
                           gp.size());
    Spectrum sgp = from_fine(gp, g);
    Spectrum out(g);
    const int cols = out.cols();
    for (int j = 0; j < g.ny; ++j) {
        double ky2 = sq(g.ky(j));
        for (int i = 0; i < cols; ++i) {
            std::size_t idx = std::size_t(j) * cols + i;
            out.c[idx] = prm.lambda * ((sq(g.kx(i)) + ky2) * sphi.c[idx] + sgp.c[idx]);
        }
    }
    return out;
}

}  // namespace

ForcingFields forcing_fields(const ManufacturedSolution& ms, double t,
                             const ModelParams& prm, const Grid2& g) {
    auto& K = kern::ops();
    ExactSample ex = sample(ms, t, g);
    Grid2 fine32 = padded_grid(g, 3, 2);
    Spectrum sphi = forward(ex.phi);
    Spectrum su1 = forward(ex.u.x), su2 = forward(ex.u.y);
    Spectrum sp = forward(ex.p);
    Spectrum smu = mu_spectrum(sphi, prm);

    ScalarField u1f = to_fine(su1, fine32), u2f = to_fine(su2, fine32);
    ScalarField phix = to_fine(deriv_x(sphi), fine32);
    ScalarField phiy = to_fine(deriv_y(sphi), fine32);
    ScalarField muf = to_fine(smu, fine32);
    ScalarField u1x = to_fine(deriv_x(su1), fine32), u1y = to_fine(deriv_y(su1), fine32);
    ScalarField u2x = to_fine(deriv_x(su2), fine32), u2y = to_fine(deriv_y(su2), fine32);

    // f_phi = phi_t + u . grad phi - M Lap mu
    ScalarField conv(fine32);
    K.mul(conv.data(), u1f.data(), phix.data(), conv.size());
    K.fmadd(conv.data(), u2f.data(), phiy.data(), conv.size());
    Spectrum sfphi = from_fine(conv, g);
    const int cols = sfphi.cols();
    for (int j = 0; j < g.ny; ++j) {
        double ky2 = sq(g.ky(j));
        for (int i = 0; i < cols; ++i) {
            std::size_t idx = std::size_t(j) * cols + i;
            sfphi.c[idx] += prm.mobility * (sq(g.kx(i)) + ky2) * smu.c[idx];
        }
    }
    ScalarField f_phi = inverse(sfphi);
    ScalarField phit_s = ScalarField::from_function(
        g, [&](double x, double y) { return ms.phi_t(x, y, t); });
    for (std::size_t i = 0; i < f_phi.size(); ++i)
        f_phi.samples[i] += phit_s.samples[i];

    // f_u = u_t + (u.grad)u - nu Lap u + grad p - mu grad phi
    ScalarField a1(fine32), a2(fine32);
    K.mul(a1.data(), u1f.data(), u1x.data(), a1.size());
    K.fmadd(a1.data(), u2f.data(), u1y.data(), a1.size());
    K.fnmadd(a1.data(), muf.data(), phix.data(), a1.size());
    K.mul(a2.data(), u1f.data(), u2x.data(), a2.size());
    K.fmadd(a2.data(), u2f.data(), u2y.data(), a2.size());
    K.fnmadd(a2.data(), muf.data(), phiy.data(), a2.size());
    Spectrum sf1 = from_fine(a1, g), sf2 = from_fine(a2, g);
    for (int j = 0; j < g.ny; ++j) {
        double ky2 = sq(g.ky(j));
        std::complex<double> iky(0, g.ky(j));
        for (int i = 0; i < cols; ++i) {
            std::size_t idx = std::size_t(j) * cols + i;
            double k2 = sq(g.kx(i)) + ky2;
            std::complex<double> ikx(0, g.kx(i));
            sf1.c[idx] += prm.nu * k2 * su1.c[idx] + ikx * sp.c[idx];
            sf2.c[idx] += prm.nu * k2 * su2.c[idx] + iky * sp.c[idx];
        }
    }
    VectorField2 f_u(inverse(sf1), inverse(sf2));
    ScalarField u1t_s = ScalarField::from_function(
        g, [&](double x, double y) { return ms.u1_t(x, y, t); });
    ScalarField u2t_s = ScalarField::from_function(
        g, [&](double x, double y) { return ms.u2_t(x, y, t); });
    for (std::size_t i = 0; i < f_u.x.size(); ++i) {
        f_u.x.samples[i] += u1t_s.samples[i];
        f_u.y.samples[i] += u2t_s.samples[i];
    }
    return {std::move(f_phi), std::move(f_u)};
}

Forcing make_forcing(const ManufacturedSolution& ms, const ModelParams& params,
                     const Grid2& grid) {
    Forcing f;
    f.phi = [=](double t) { return forcing_fields(ms, t, params, grid).f_phi; };
    f.u = [=](double t) { return forcing_fields(ms, t, params, grid).f_u; };
    return f;
}

ErrorRecord error_norms(const SolverState& state, const ManufacturedSolution& ms) {
    ExactSample ex = sample(ms, state.time(), state.grid());
    auto diff = [](const ScalarField& a, const ScalarField& b) {
        ScalarField d(a.grid);
        for (std::size_t i = 0; i < d.size(); ++i)
            d.samples[i] = a.samples[i] - b.samples[i];
        return d;
    };
    ScalarField ephi = diff(state.phi(), ex.phi);
    ScalarField eu1 = diff(state.u().x, ex.u.x);
    ScalarField eu2 = diff(state.u().y, ex.u.y);
    // Pressure is gauge-fixed to zero mean on both sides.
    ScalarField ep = diff(state.p(), ex.p);
    double mp = mean(ep);
    for (auto& v : ep.samples) v -= mp;

    ErrorRecord r;
    r.phi_l2 = l2_norm(ephi);
    r.phi_h1 = h1_seminorm(ephi);
    r.u_l2 = std::hypot(l2_norm(eu1), l2_norm(eu2));
    r.u_h1 = std::hypot(h1_seminorm(eu1), h1_seminorm(eu2));
    r.p_l2 = l2_norm(ep);
    r.p_h1 = h1_seminorm(ep);
    return r;
}

void seed_exact_history(SolverState& state, const ManufacturedSolution& ms, double dt) {
    std::vector<HistoryLevel> levels;
    for (int j = 0; j < state.order(); ++j) {
        double t = j * dt;
        ExactSample ex = sample(ms, t, state.grid());
        ScalarField mu = inverse(mu_spectrum(forward(ex.phi), state.params()));
        double mp = mean(ex.p);
        for (auto& v : ex.p.samples) v -= mp;
        levels.push_back({std::move(ex.phi), std::move(mu), std::move(ex.u),
                          std::move(ex.p)});
    }
    state.seed_history(levels, dt);
}

ConvergenceConfig ConvergenceConfig::reference() {
    ConvergenceConfig cfg;
    cfg.grid = Grid2(50, 50, 2.0, 2.0, -1.0, -1.0);
    cfg.params.lambda = 1.0;
    cfg.params.mobility = 1e-3;
    cfg.params.eps = 1.0;
    cfg.params.gamma = 0.0;
    cfg.params.nu = 0.05;
    cfg.params.kappa0 = 1.0;
    cfg.params.chi = 0.0;
    cfg.T = 0.2;
    cfg.exact_seeded = true;
    return cfg;
}

std::vector<ConvergenceRow> convergence_study(int k, const std::vector<double>& dts,
                                              const ConvergenceConfig& cfg) {
    if (dts.size() < 2) throw Error("convergence ladder needs at least 2 entries");
    for (std::size_t i = 1; i < dts.size(); ++i)
        if (!(dts[i] < dts[i - 1])) throw Error("dt ladder must be strictly decreasing");

    ManufacturedSolution ms = ManufacturedSolution::reference_case();
    Forcing forcing = make_forcing(ms, cfg.params, cfg.grid);

    std::vector<ConvergenceRow> rows;
    for (double dt : dts) {
        ExactSample ic = sample(ms, 0.0, cfg.grid);
        SolverState state(cfg.grid, cfg.params, k, ic.phi, ic.u);
        if (cfg.exact_seeded) seed_exact_history(state, ms, dt);
        long nsteps = std::lround(cfg.T / dt) - state.step_index();
        for (long s = 0; s < nsteps; ++s) state.step(dt, &forcing);
        ConvergenceRow row;
        row.dt = dt;
        row.err = error_norms(state, ms);
        rows.push_back(row);
    }
    auto nan = std::nan("");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto ord = [&](double ec, double ep_) {
            if (i == 0) return nan;
            return std::log(ep_ / ec) / std::log(rows[i - 1].dt / rows[i].dt);
        };
        const ErrorRecord* prev = i ? &rows[i - 1].err : nullptr;
        const ErrorRecord& cur = rows[i].err;
        rows[i].order.phi_l2 = ord(cur.phi_l2, prev ? prev->phi_l2 : 0);
        rows[i].order.phi_h1 = ord(cur.phi_h1, prev ? prev->phi_h1 : 0);
        rows[i].order.u_l2 = ord(cur.u_l2, prev ? prev->u_l2 : 0);
        rows[i].order.u_h1 = ord(cur.u_h1, prev ? prev->u_h1 : 0);
        rows[i].order.p_l2 = ord(cur.p_l2, prev ? prev->p_l2 : 0);
        rows[i].order.p_h1 = ord(cur.p_h1, prev ? prev->p_h1 : 0);
    }
    return rows;
}

void write_convergence_csv(const std::string& path, int k,
                           const std::vector<ConvergenceRow>& rows) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw Error("cannot open " + path);
    std::fprintf(f,
                 "k,dt,err_phi_l2,err_phi_h1,err_u_l2,err_u_h1,err_p,err_p_h1,"
                 "order_phi_l2,order_u_l2,order_p_h1\n");
    for (const auto& r : rows)
        std::fprintf(f,
                     "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                     k, r.dt, r.err.phi_l2, r.err.phi_h1, r.err.u_l2, r.err.u_h1,
                     r.err.p_l2, r.err.p_h1, r.order.phi_l2, r.order.u_l2,
                     r.order.p_h1);
    std::fclose(f);
}

}  // namespace chns
