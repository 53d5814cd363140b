#pragma once

#include <cstddef>

// Data-parallel real-space inner loops. Scalar reference implementations
// and AVX2 variants live in separate translation units; the active table
// is picked once at startup from CPUID. The two backends are
// equivalence-tested against each other.
namespace chns::kern {

struct Ops {
    // out[i] = a[i] * b[i]
    void (*mul)(double* out, const double* a, const double* b, std::size_t n);
    // out[i] += a[i] * b[i]
    void (*fmadd)(double* out, const double* a, const double* b, std::size_t n);
    // out[i] -= a[i] * b[i]
    void (*fnmadd)(double* out, const double* a, const double* b, std::size_t n);
    // out[i] = c * a[i]
    void (*scale)(double* out, const double* a, double c, std::size_t n);
    // out[i] = sum_j coef[j] * src[j][i]   (BDF history combinations)
    void (*lincomb)(double* out, const double* coef, const double* const* src,
                    int m, std::size_t n);
    // out[i] = (1 - p^2)^2 * c  with p = phi[i]   (double well, c = 1/(4 eps^2))
    void (*double_well)(double* out, const double* phi, double c, std::size_t n);
    // out[i] = (p^3 - p) * inv_eps2 - gamma * p   (F' = G' - gamma phi)
    void (*well_prime)(double* out, const double* phi, double inv_eps2,
                       double gamma, std::size_t n);
    double (*sum)(const double* a, std::size_t n);
    double (*dot)(const double* a, const double* b, std::size_t n);
    double (*max_abs)(const double* a, std::size_t n);
};

extern const Ops scalar_ops;
extern const Ops avx2_ops;
bool avx2_available();

// Active backend. Defaults to the widest supported one.
const Ops& ops();
const char* backend_name();
// Force a backend by name ("scalar" / "avx2"), for tests. Returns false
// if the backend is not usable on this machine.
bool select_backend(const char* name);

}  // namespace chns::kern
