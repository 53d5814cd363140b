#pragma once

#include <complex>
#include <span>

#include "chns/field.hpp"

namespace chns {

using CplxVec = std::vector<std::complex<double>, AlignedAlloc<std::complex<double>>>;

// Half-spectrum (real-to-complex) Fourier coefficients of a ScalarField.
// Layout c[j*(nx/2+1) + i] with ky row j in 0..ny-1 and kx column
// i in 0..nx/2. The forward transform carries the 1/(nx*ny) normalization
// so c[0] is the domain mean.
struct Spectrum {
    Grid2 grid;
    CplxVec c;

    Spectrum() = default;
    explicit Spectrum(const Grid2& g)
        : grid(g), c(std::size_t(g.ny) * (g.nx / 2 + 1)) {}

    int cols() const { return grid.nx / 2 + 1; }
    std::complex<double>& at(int i, int j) { return c[std::size_t(j) * cols() + i]; }
    std::complex<double> at(int i, int j) const { return c[std::size_t(j) * cols() + i]; }
};

Spectrum forward(const ScalarField& f);
ScalarField inverse(const Spectrum& s);

// Calculus on spectra (Nyquist rows/columns are annihilated by the
// wavenumber convention in Grid2).
Spectrum deriv_x(const Spectrum& s);
Spectrum deriv_y(const Spectrum& s);
Spectrum laplacian(const Spectrum& s);

VectorField2 gradient(const ScalarField& f);
ScalarField laplacian(const ScalarField& f);
ScalarField divergence(const VectorField2& v);
VectorField2 curl_curl(const VectorField2& v);

// (a - b Lap) w = rhs, a > 0, b >= 0.
Spectrum solve_helmholtz(double a, double b, const Spectrum& rhs);
ScalarField solve_helmholtz(double a, double b, const ScalarField& rhs);

// (a + c1 Lap^2 - c2 Lap) w = rhs, a > 0, c1 > 0, c2 >= 0.
Spectrum solve_ch_operator(double a, double c1, double c2, const Spectrum& rhs);
ScalarField solve_ch_operator(double a, double c1, double c2, const ScalarField& rhs);

// Lap p = rhs with mean(p) = 0. Throws CompatibilityError when the zero
// mode of rhs exceeds 1e-8 * |rhs|.
Spectrum solve_poisson_zero_mean(const Spectrum& rhs);
ScalarField solve_poisson_zero_mean(const ScalarField& rhs);

// Alias-free pointwise product: 3/2-rule padding for two factors,
// factor-2 padding for three.
ScalarField dealiased_product(std::span<const ScalarField* const> fs);
ScalarField dealiased_product(const ScalarField& a, const ScalarField& b);
ScalarField dealiased_product(const ScalarField& a, const ScalarField& b,
                              const ScalarField& c);

double l2_norm(const Spectrum& s);
double h1_seminorm(const Spectrum& s);
double mean(const Spectrum& s);
double l2_norm(const ScalarField& f);
double h1_seminorm(const ScalarField& f);
double mean(const ScalarField& f);

// Zero-padding machinery, shared with the stepper's nonlinear assembly.
Grid2 padded_grid(const Grid2& g, int num, int den);
// Evaluate the trig interpolant of s on a finer grid (exact for resolved
// modes; coarse Nyquist content is dropped).
ScalarField to_fine(const Spectrum& s, const Grid2& fine);
// Galerkin truncation of a fine-grid field back to the coarse band.
Spectrum from_fine(const ScalarField& fine, const Grid2& coarse);

}  // namespace chns
