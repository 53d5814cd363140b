#pragma once

// Independent reference implementation used only by tests. Everything here
// is computed with naive O(N^2)-per-output DFT sums and plain loops — no
// FFTW, no shared spectral code paths — so agreement with the production
// library is meaningful. Only the documented conventions are shared:
// forward normalization 1/(nx*ny), annihilated Nyquist wavenumbers, and
// the zero-padding rules for alias-free products.

#include <complex>
#include <deque>
#include <vector>

#include "chns/field.hpp"
#include "chns/model.hpp"

namespace dref {

using chns::Grid2;
using chns::ModelParams;
using chns::ScalarField;
using chns::VectorField2;
using Cplx = std::complex<double>;

// Full (not half) spectrum: c[b*nx + a], kx index a in 0..nx-1.
struct DSpec {
    Grid2 g;
    std::vector<Cplx> c;

    DSpec() = default;
    explicit DSpec(const Grid2& grid) : g(grid), c(std::size_t(grid.nx) * grid.ny) {}
    Cplx& at(int a, int b) { return c[std::size_t(b) * g.nx + a]; }
    Cplx at(int a, int b) const { return c[std::size_t(b) * g.nx + a]; }
};

double wavenum(int a, int n, double L);  // alias wavenumber, 0 at Nyquist

DSpec forward_d(const ScalarField& f);
ScalarField inverse_d(const DSpec& s);

DSpec dx_d(const DSpec& s);
DSpec dy_d(const DSpec& s);
DSpec lap_d(const DSpec& s);

DSpec solve_helm_d(double a, double b, const DSpec& rhs);
DSpec solve_ch_d(double a, double c1, double c2, const DSpec& rhs);
DSpec solve_poisson0_d(const DSpec& rhs);

Grid2 padded_d(const Grid2& g, int num, int den);
// Spectral embedding into a finer grid; the coarse Nyquist row/column is
// dropped. truncate_d is the adjoint restriction.
DSpec embed_d(const DSpec& s, const Grid2& fine);
DSpec truncate_d(const DSpec& fine, const Grid2& coarse);
ScalarField to_fine_d(const DSpec& s, const Grid2& fine);

// Alias-free product of 2 (3/2-rule) or 3 (factor-2) fields.
ScalarField product_d(const std::vector<const ScalarField*>& fs);

double l2_d(const DSpec& s);
double h1_d(const DSpec& s);
double mean_d(const ScalarField& f);

// Full time-stepping reference: one GSAV step replicated with dense
// arithmetic, including the startup order ramp.
class DenseSim {
public:
    DenseSim(const Grid2& grid, const ModelParams& params, int order,
             const ScalarField& phi0, const VectorField2& u0);

    void step(double dt);

    const ScalarField& phi() const { return phi_.front(); }
    const ScalarField& mu() const { return mu_.front(); }
    const VectorField2& u() const { return u_.front(); }
    const ScalarField& p() const { return p_.front(); }
    double R() const { return R_; }
    double xi() const { return xi_; }
    double eta() const { return eta_; }
    double energy_value() const { return E_; }

private:
    Grid2 g_;
    ModelParams prm_;
    int order_;
    double R_ = 0, xi_ = 1, eta_ = 1, E_ = 0;
    std::deque<ScalarField> tphi_, phi_, mu_, p_;
    std::deque<VectorField2> tu_, u_;
};

}  // namespace dref
