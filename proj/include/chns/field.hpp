#pragma once

#include <cstdlib>
#include <new>
#include <utility>
#include <vector>

#include "chns/grid.hpp"

namespace chns {

// 64-byte aligned allocator so FFTW new-array execution and the SIMD
// kernels can assume aligned loads.
template <class T>
struct AlignedAlloc {
    using value_type = T;
    AlignedAlloc() = default;
    template <class U>
    AlignedAlloc(const AlignedAlloc<U>&) {}
    T* allocate(std::size_t n) {
        void* p = std::aligned_alloc(64, ((n * sizeof(T) + 63) / 64) * 64);
        if (!p) throw std::bad_alloc();
        return static_cast<T*>(p);
    }
    void deallocate(T* p, std::size_t) { std::free(p); }
    template <class U>
    bool operator==(const AlignedAlloc<U>&) const { return true; }
};

using RealVec = std::vector<double, AlignedAlloc<double>>;

// Real-valued sample grid of one scalar unknown (phi, mu, p, ...).
struct ScalarField {
    Grid2 grid;
    RealVec samples;

    ScalarField() = default;
    explicit ScalarField(const Grid2& g) : grid(g), samples(g.size(), 0.0) {}

    template <class F>
    static ScalarField from_function(const Grid2& g, F&& f) {
        ScalarField out(g);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                out.samples[std::size_t(j) * g.nx + i] = f(g.x(i), g.y(j));
        return out;
    }

    double& operator()(int i, int j) { return samples[std::size_t(j) * grid.nx + i]; }
    double operator()(int i, int j) const { return samples[std::size_t(j) * grid.nx + i]; }
    double* data() { return samples.data(); }
    const double* data() const { return samples.data(); }
    std::size_t size() const { return samples.size(); }
};

struct VectorField2 {
    ScalarField x, y;

    VectorField2() = default;
    explicit VectorField2(const Grid2& g) : x(g), y(g) {}
    VectorField2(ScalarField cx, ScalarField cy) : x(std::move(cx)), y(std::move(cy)) {
        if (!(x.grid == y.grid)) throw Error("vector field components must share one grid");
    }
    const Grid2& grid() const { return x.grid; }
};

}  // namespace chns
