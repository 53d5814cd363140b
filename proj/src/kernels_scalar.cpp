#include <cmath>

#include "chns/kernels.hpp"

// Reference kernels. Plain loops, kept branch-free so the compiler's
// autovectorizer does not change the rounding story between builds.

namespace chns::kern {
namespace {

void mul_s(double* out, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void fmadd_s(double* out, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] += a[i] * b[i];
}

void fnmadd_s(double* out, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] -= a[i] * b[i];
}

void scale_s(double* out, const double* a, double c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = c * a[i];
}

void lincomb_s(double* out, const double* coef, const double* const* src,
               int m, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < m; ++j) acc += coef[j] * src[j][i];
        out[i] = acc;
    }
}

void double_well_s(double* out, const double* phi, double c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double w = 1.0 - phi[i] * phi[i];
        out[i] = w * w * c;
    }
}

void well_prime_s(double* out, const double* phi, double inv_eps2,
                  double gamma, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double p = phi[i];
        out[i] = (p * p * p - p) * inv_eps2 - gamma * p;
    }
}

double sum_s(const double* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i];
    return acc;
}

double dot_s(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double max_abs_s(const double* a, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i]));
    return m;
}

}  // namespace

const Ops scalar_ops = {mul_s,         fmadd_s,      fnmadd_s, scale_s, lincomb_s,
                        double_well_s, well_prime_s, sum_s,    dot_s,   max_abs_s};

}  // namespace chns::kern
