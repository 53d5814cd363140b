#include "chns/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "chns/errors.hpp"
#include "chns/kernels.hpp"

namespace chns {
namespace {

// One FFTW plan pair per grid size, planned once (FFTW_MEASURE) on
// aligned scratch and executed on caller buffers via the new-array
// interface. Plan creation is serialized; execution is thread-safe.
struct PlanPair {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

PlanPair& plans_for(int nx, int ny) {
    static std::map<std::pair<int, int>, PlanPair> cache;
    static std::mutex mtx;
    std::lock_guard lock(mtx);
    auto key = std::make_pair(nx, ny);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::size_t nreal = std::size_t(nx) * ny;
    std::size_t ncplx = std::size_t(ny) * (nx / 2 + 1);
    double* re = fftw_alloc_real(nreal);
    fftw_complex* sp = fftw_alloc_complex(ncplx);
    PlanPair p;
    // Row-major (ny, nx): FFTW wants the slowest dimension first.
    p.r2c = fftw_plan_dft_r2c_2d(ny, nx, re, sp, FFTW_MEASURE);
    p.c2r = fftw_plan_dft_c2r_2d(ny, nx, sp, re, FFTW_MEASURE);
    fftw_free(re);
    fftw_free(sp);
    if (!p.r2c || !p.c2r) throw Error("FFTW plan creation failed");
    return cache.emplace(key, p).first->second;
}

double sq(double x) { return x * x; }

// Parseval weight of an r2c column: interior kx columns stand for a
// conjugate pair.
double col_weight(int i, int nx) { return (i == 0 || i == nx / 2) ? 1.0 : 2.0; }

}  // namespace

Spectrum forward(const ScalarField& f) {
    Spectrum s(f.grid);
    auto& p = plans_for(f.grid.nx, f.grid.ny);
    RealVec copy = f.samples;  // r2c may clobber its input
    fftw_execute_dft_r2c(p.r2c, copy.data(),
                         reinterpret_cast<fftw_complex*>(s.c.data()));
    const double norm = 1.0 / (double(f.grid.nx) * f.grid.ny);
    for (auto& z : s.c) z *= norm;
    return s;
}

ScalarField inverse(const Spectrum& s) {
    ScalarField f(s.grid);
    auto& p = plans_for(s.grid.nx, s.grid.ny);
    CplxVec copy = s.c;  // c2r clobbers its input
    fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(copy.data()),
                         f.samples.data());
    return f;
}

Spectrum deriv_x(const Spectrum& s) {
    Spectrum out(s.grid);
    const int cols = s.cols();
    for (int j = 0; j < s.grid.ny; ++j)
        for (int i = 0; i < cols; ++i)
            out.c[std::size_t(j) * cols + i] =
                std::complex<double>(0.0, s.grid.kx(i)) * s.c[std::size_t(j) * cols + i];
    return out;
}

Spectrum deriv_y(const Spectrum& s) {
    Spectrum out(s.grid);
    const int cols = s.cols();
    for (int j = 0; j < s.grid.ny; ++j) {
        std::complex<double> iky(0.0, s.grid.ky(j));
        for (int i = 0; i < cols; ++i)
            out.c[std::size_t(j) * cols + i] = iky * s.c[std::size_t(j) * cols + i];
    }
    return out;
}

Spectrum laplacian(const Spectrum& s) {
    Spectrum out(s.grid);
    const int cols = s.cols();
    for (int j = 0; j < s.grid.ny; ++j) {
        double ky2 = sq(s.grid.ky(j));
        for (int i = 0; i < cols; ++i)
            out.c[std::size_t(j) * cols + i] =
                -(sq(s.grid.kx(i)) + ky2) * s.c[std::size_t(j) * cols + i];
    }
    return out;
}

VectorField2 gradient(const ScalarField& f) {
    Spectrum s = forward(f);
    return {inverse(deriv_x(s)), inverse(deriv_y(s))};
}

ScalarField laplacian(const ScalarField& f) { return inverse(laplacian(forward(f))); }

ScalarField divergence(const VectorField2& v) {
    Spectrum sx = deriv_x(forward(v.x));
    Spectrum sy = deriv_y(forward(v.y));
    for (std::size_t i = 0; i < sx.c.size(); ++i) sx.c[i] += sy.c[i];
    return inverse(sx);
}

VectorField2 curl_curl(const VectorField2& v) {
    // grad(div v) - Lap v, componentwise in spectral space.
    Spectrum sx = forward(v.x), sy = forward(v.y);
    const Grid2& g = v.grid();
    Spectrum ox(g), oy(g);
    const int cols = sx.cols();
    for (int j = 0; j < g.ny; ++j) {
        double ky = g.ky(j);
        for (int i = 0; i < cols; ++i) {
            double kx = g.kx(i);
            std::size_t idx = std::size_t(j) * cols + i;
            std::complex<double> div =
                std::complex<double>(0, kx) * sx.c[idx] +
                std::complex<double>(0, ky) * sy.c[idx];
            double k2 = kx * kx + ky * ky;
            ox.c[idx] = std::complex<double>(0, kx) * div + k2 * sx.c[idx];
            oy.c[idx] = std::complex<double>(0, ky) * div + k2 * sy.c[idx];
        }
    }
    return {inverse(ox), inverse(oy)};
}

Spectrum solve_helmholtz(double a, double b, const Spectrum& rhs) {
    if (a <= 0) throw Error("solve_helmholtz requires a > 0");
    Spectrum out(rhs.grid);
    const int cols = rhs.cols();
    for (int j = 0; j < rhs.grid.ny; ++j) {
        double ky2 = sq(rhs.grid.ky(j));
        for (int i = 0; i < cols; ++i) {
            std::size_t idx = std::size_t(j) * cols + i;
            out.c[idx] = rhs.c[idx] / (a + b * (sq(rhs.grid.kx(i)) + ky2));
        }
    }
    return out;
}

ScalarField solve_helmholtz(double a, double b, const ScalarField& rhs) {
    return inverse(solve_helmholtz(a, b, forward(rhs)));
}

Spectrum solve_ch_operator(double a, double c1, double c2, const Spectrum& rhs) {
    if (a <= 0 || c1 <= 0) throw Error("solve_ch_operator requires a, c1 > 0");
    Spectrum out(rhs.grid);
    const int cols = rhs.cols();
    for (int j = 0; j < rhs.grid.ny; ++j) {
        double ky2 = sq(rhs.grid.ky(j));
        for (int i = 0; i < cols; ++i) {
            std::size_t idx = std::size_t(j) * cols + i;
            double k2 = sq(rhs.grid.kx(i)) + ky2;
            out.c[idx] = rhs.c[idx] / (a + c1 * k2 * k2 + c2 * k2);
        }
    }
    return out;
}

ScalarField solve_ch_operator(double a, double c1, double c2, const ScalarField& rhs) {
    return inverse(solve_ch_operator(a, c1, c2, forward(rhs)));
}

Spectrum solve_poisson_zero_mean(const Spectrum& rhs) {
    double nrm = l2_norm(rhs);
    if (std::abs(rhs.c[0]) > 1e-8 * nrm && std::abs(rhs.c[0]) > 0)
        throw CompatibilityError("Poisson right side has a nonzero mean");
    Spectrum out(rhs.grid);
    const int cols = rhs.cols();
    for (int j = 0; j < rhs.grid.ny; ++j) {
        double ky2 = sq(rhs.grid.ky(j));
        for (int i = 0; i < cols; ++i) {
            std::size_t idx = std::size_t(j) * cols + i;
            double k2 = sq(rhs.grid.kx(i)) + ky2;
            // k2 == 0 covers both the true zero mode and the annihilated
            // Nyquist bins; those carry no solvable content.
            out.c[idx] = (k2 == 0.0) ? 0.0 : rhs.c[idx] / (-k2);
        }
    }
    return out;
}

ScalarField solve_poisson_zero_mean(const ScalarField& rhs) {
    return inverse(solve_poisson_zero_mean(forward(rhs)));
}

Grid2 padded_grid(const Grid2& g, int num, int den) {
    auto pad = [&](int n) {
        int p = (n * num + den - 1) / den;
        if (p % 2) ++p;
        return p;
    };
    return Grid2(pad(g.nx), pad(g.ny), g.Lx, g.Ly, g.x0, g.y0);
}

ScalarField to_fine(const Spectrum& s, const Grid2& fine) {
    const Grid2& g = s.grid;
    if (fine.nx < g.nx || fine.ny < g.ny) throw Error("to_fine target must be finer");
    Spectrum fs(fine);
    const int cols = s.cols(), fcols = fs.cols();
    for (int j = 0; j < g.ny; ++j) {
        if (j == g.ny / 2) continue;  // Nyquist row dropped
        int jj = (j < g.ny / 2) ? j : j - g.ny;
        int fj = (jj >= 0) ? jj : jj + fine.ny;
        for (int i = 0; i < g.nx / 2; ++i)
            fs.c[std::size_t(fj) * fcols + i] = s.c[std::size_t(j) * cols + i];
    }
    return inverse(fs);
}

Spectrum from_fine(const ScalarField& fine, const Grid2& coarse) {
    Spectrum fs = forward(fine);
    Spectrum out(coarse);
    const int cols = out.cols(), fcols = fs.cols();
    for (int j = 0; j < coarse.ny; ++j) {
        if (j == coarse.ny / 2) continue;
        int jj = (j < coarse.ny / 2) ? j : j - coarse.ny;
        int fj = (jj >= 0) ? jj : jj + fine.grid.ny;
        for (int i = 0; i < coarse.nx / 2; ++i)
            out.c[std::size_t(j) * cols + i] = fs.c[std::size_t(fj) * fcols + i];
    }
    return out;
}

ScalarField dealiased_product(std::span<const ScalarField* const> fs) {
    if (fs.size() < 2 || fs.size() > 3)
        throw Error("dealiased_product takes 2 or 3 fields");
    const Grid2& g = fs[0]->grid;
    for (auto* f : fs)
        if (!(f->grid == g)) throw Error("dealiased_product fields must share one grid");
    Grid2 fine = (fs.size() == 2) ? padded_grid(g, 3, 2) : padded_grid(g, 2, 1);
    ScalarField acc = to_fine(forward(*fs[0]), fine);
    for (std::size_t n = 1; n < fs.size(); ++n) {
        ScalarField fac = to_fine(forward(*fs[n]), fine);
        kern::ops().mul(acc.data(), acc.data(), fac.data(), acc.size());
    }
    return inverse(from_fine(acc, g));
}

ScalarField dealiased_product(const ScalarField& a, const ScalarField& b) {
    const ScalarField* fs[] = {&a, &b};
    return dealiased_product(std::span<const ScalarField* const>(fs, 2));
}

ScalarField dealiased_product(const ScalarField& a, const ScalarField& b,
                              const ScalarField& c) {
    const ScalarField* fs[] = {&a, &b, &c};
    return dealiased_product(std::span<const ScalarField* const>(fs, 3));
}

double l2_norm(const Spectrum& s) {
    const int cols = s.cols();
    double acc = 0.0;
    for (int j = 0; j < s.grid.ny; ++j)
        for (int i = 0; i < cols; ++i)
            acc += col_weight(i, s.grid.nx) * std::norm(s.c[std::size_t(j) * cols + i]);
    return std::sqrt(s.grid.area() * acc);
}

double h1_seminorm(const Spectrum& s) {
    const int cols = s.cols();
    double acc = 0.0;
    for (int j = 0; j < s.grid.ny; ++j) {
        double ky2 = sq(s.grid.ky(j));
        for (int i = 0; i < cols; ++i)
            acc += col_weight(i, s.grid.nx) * (sq(s.grid.kx(i)) + ky2) *
                   std::norm(s.c[std::size_t(j) * cols + i]);
    }
    return std::sqrt(s.grid.area() * acc);
}

double mean(const Spectrum& s) { return s.c[0].real(); }

double l2_norm(const ScalarField& f) { return l2_norm(forward(f)); }
double h1_seminorm(const ScalarField& f) { return h1_seminorm(forward(f)); }

double mean(const ScalarField& f) {
    return kern::ops().sum(f.data(), f.size()) / double(f.size());
}

}  // namespace chns
