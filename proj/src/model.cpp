#include "chns/model.hpp"

#include <cmath>

#include "chns/errors.hpp"
#include "chns/kernels.hpp"

namespace chns {

void ModelParams::validate() const {
    if (lambda <= 0) throw Error("lambda must be positive");
    if (mobility <= 0) throw Error("mobility must be positive");
    if (eps <= 0) throw Error("eps must be positive");
    if (nu <= 0) throw Error("nu must be positive");
    if (kappa0 <= 0) throw Error("kappa0 must be positive");
    if (gamma < 0) throw Error("gamma must be nonnegative");
    if (chi < 0) throw Error("chi must be nonnegative");
}

double potential_G(double phi, const ModelParams& p) {
    double w = 1.0 - phi * phi;
    return w * w / (4.0 * p.eps * p.eps);
}

double potential_G_prime(double phi, const ModelParams& p) {
    return (phi * phi * phi - phi) / (p.eps * p.eps);
}

double potential_F_prime(double phi, const ModelParams& p) {
    return potential_G_prime(phi, p) - p.gamma * phi;
}

namespace {

// int G(phi) dx on the factor-2 padded grid; the quartic of a band-limited
// field is quadrature-clean there for all practical spectra.
double bulk_G_integral(const ScalarField& phi, const ModelParams& p) {
    Grid2 fine = padded_grid(phi.grid, 2, 1);
    ScalarField phif = to_fine(forward(phi), fine);
    ScalarField g(fine);
    kern::ops().double_well(g.data(), phif.data(), 1.0 / (4.0 * p.eps * p.eps),
                            g.size());
    return kern::ops().sum(g.data(), g.size()) / double(g.size()) * fine.area();
}

}  // namespace

double energy(const ScalarField& phi, const VectorField2& u, const ModelParams& p) {
    double kinetic = 0.5 * (l2_norm(u.x) * l2_norm(u.x) + l2_norm(u.y) * l2_norm(u.y));
    double grad = h1_seminorm(phi);
    return kinetic + 0.5 * p.lambda * grad * grad + p.lambda * bulk_G_integral(phi, p);
}

double bulk_potential_integral(const ScalarField& phi, const ModelParams& p) {
    // lambda int F = lambda int G - lambda gamma/2 |phi|^2
    double l2 = l2_norm(phi);
    return p.lambda * bulk_G_integral(phi, p) - 0.5 * p.lambda * p.gamma * l2 * l2;
}

double dissipation_rate(const ScalarField& mu, const VectorField2& u,
                        const ModelParams& p) {
    double gmu = h1_seminorm(mu);
    double gux = h1_seminorm(u.x);
    double guy = h1_seminorm(u.y);
    return p.mobility * gmu * gmu + p.nu * (gux * gux + guy * guy);
}

VectorField2 buoyancy_force(const ScalarField& phi, const ModelParams& p) {
    VectorField2 out(phi.grid);
    if (p.chi == 0.0) return out;
    double bar = mean(phi);
    for (std::size_t i = 0; i < phi.size(); ++i) {
        double rho = p.chi * (phi.samples[i] - bar);
        out.x.samples[i] = rho * p.gravity[0];
        out.y.samples[i] = rho * p.gravity[1];
    }
    return out;
}

}  // namespace chns
