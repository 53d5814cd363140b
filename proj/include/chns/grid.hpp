#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

#include "chns/errors.hpp"

namespace chns {

// Doubly periodic rectangle [x0, x0+Lx) x [y0, y0+Ly) sampled on an
// nx x ny collocation grid, x fastest in memory.
struct Grid2 {
    int nx = 0, ny = 0;
    double Lx = 0, Ly = 0;
    double x0 = 0, y0 = 0;

    Grid2() = default;
    Grid2(int nx_, int ny_, double Lx_, double Ly_, double x0_ = 0, double y0_ = 0)
        : nx(nx_), ny(ny_), Lx(Lx_), Ly(Ly_), x0(x0_), y0(y0_) {
        if (nx < 4 || ny < 4 || nx % 2 != 0 || ny % 2 != 0)
            throw Error("grid dimensions must be even and >= 4");
        if (Lx <= 0 || Ly <= 0) throw Error("grid side lengths must be positive");
    }

    std::size_t size() const { return std::size_t(nx) * ny; }
    double dx() const { return Lx / nx; }
    double dy() const { return Ly / ny; }
    double area() const { return Lx * Ly; }
    double x(int i) const { return x0 + i * dx(); }
    double y(int j) const { return y0 + j * dy(); }

    // Signed-alias wavenumber for index i on an n-point axis of length L.
    // The unpaired Nyquist mode is zeroed (odd derivatives of it are
    // ill-defined), so every differentiation multiplier built from these
    // is Nyquist-free.
    static double wavenumber(int i, int n, double L) {
        if (i == n / 2) return 0.0;
        int alias = (i <= n / 2) ? i : i - n;
        return 2.0 * std::numbers::pi * alias / L;
    }
    double kx(int i) const { return wavenumber(i, nx, Lx); }
    double ky(int j) const { return wavenumber(j, ny, Ly); }

    friend bool operator==(const Grid2& a, const Grid2& b) {
        return a.nx == b.nx && a.ny == b.ny && a.Lx == b.Lx && a.Ly == b.Ly &&
               a.x0 == b.x0 && a.y0 == b.y0;
    }
};

}  // namespace chns
