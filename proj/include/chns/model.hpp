#pragma once

#include <array>

#include "chns/field.hpp"
#include "chns/spectral.hpp"

namespace chns {

struct ModelParams {
    double lambda = 1.0;    // mixing coefficient
    double mobility = 1.0;  // M
    double eps = 1.0;       // interfacial width
    double gamma = 0.0;     // quadratic split constant
    double nu = 1.0;        // viscosity
    double kappa0 = 1.0;    // energy shift
    double chi = 0.0;       // buoyancy strength, 0 disables buoyancy
    std::array<double, 2> gravity = {0.0, -1.0};

    void validate() const;
};

// G(phi) = (1 - phi^2)^2 / (4 eps^2)
double potential_G(double phi, const ModelParams& p);
// G'(phi) = (phi^3 - phi) / eps^2
double potential_G_prime(double phi, const ModelParams& p);
// F'(phi) = G'(phi) - gamma phi
double potential_F_prime(double phi, const ModelParams& p);

// E(phi, u) = int 1/2|u|^2 + lambda/2 |grad phi|^2 + lambda G(phi).
// The gamma-split form (lambda gamma/2 phi^2 + lambda F) is identical by
// construction. The quartic is integrated on a factor-2 padded grid.
double energy(const ScalarField& phi, const VectorField2& u, const ModelParams& p);

// lambda * int F(phi), the quantity kappa0 must dominate.
double bulk_potential_integral(const ScalarField& phi, const ModelParams& p);

// M |grad mu|^2 + nu |grad u|^2 (nonnegative magnitude).
double dissipation_rate(const ScalarField& mu, const VectorField2& u,
                        const ModelParams& p);

// chi (phi - mean(phi)) g, componentwise; zero field when chi = 0.
VectorField2 buoyancy_force(const ScalarField& phi, const ModelParams& p);

}  // namespace chns
