// AVX2/FMA variants. This TU is the only one compiled with -mavx2 -mfma;
// the dispatcher never calls into it unless CPUID reports AVX2.

#include <immintrin.h>

#include <cmath>

#include "chns/kernels.hpp"

namespace chns::kern {
namespace {

constexpr std::size_t W = 4;  // doubles per 256-bit lane

void mul_v(double* out, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + W <= n; i += W)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                                _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void fmadd_v(double* out, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + W <= n; i += W)
        _mm256_storeu_pd(out + i,
                         _mm256_fmadd_pd(_mm256_loadu_pd(a + i),
                                         _mm256_loadu_pd(b + i),
                                         _mm256_loadu_pd(out + i)));
    for (; i < n; ++i) out[i] = std::fma(a[i], b[i], out[i]);
}

void fnmadd_v(double* out, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + W <= n; i += W)
        _mm256_storeu_pd(out + i,
                         _mm256_fnmadd_pd(_mm256_loadu_pd(a + i),
                                          _mm256_loadu_pd(b + i),
                                          _mm256_loadu_pd(out + i)));
    for (; i < n; ++i) out[i] = std::fma(-a[i], b[i], out[i]);
}

void scale_v(double* out, const double* a, double c, std::size_t n) {
    __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + W <= n; i += W)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(vc, _mm256_loadu_pd(a + i)));
    for (; i < n; ++i) out[i] = c * a[i];
}

void lincomb_v(double* out, const double* coef, const double* const* src,
               int m, std::size_t n) {
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
        __m256d acc = _mm256_setzero_pd();
        for (int j = 0; j < m; ++j)
            acc = _mm256_fmadd_pd(_mm256_set1_pd(coef[j]),
                                  _mm256_loadu_pd(src[j] + i), acc);
        _mm256_storeu_pd(out + i, acc);
    }
    for (; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < m; ++j) acc = std::fma(coef[j], src[j][i], acc);
        out[i] = acc;
    }
}

void double_well_v(double* out, const double* phi, double c, std::size_t n) {
    __m256d one = _mm256_set1_pd(1.0), vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
        __m256d p = _mm256_loadu_pd(phi + i);
        __m256d w = _mm256_sub_pd(one, _mm256_mul_pd(p, p));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_mul_pd(w, w), vc));
    }
    for (; i < n; ++i) {
        double w = 1.0 - phi[i] * phi[i];
        out[i] = w * w * c;
    }
}

void well_prime_v(double* out, const double* phi, double inv_eps2,
                  double gamma, std::size_t n) {
    __m256d ve = _mm256_set1_pd(inv_eps2), vg = _mm256_set1_pd(gamma);
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
        __m256d p = _mm256_loadu_pd(phi + i);
        __m256d cub = _mm256_sub_pd(_mm256_mul_pd(_mm256_mul_pd(p, p), p), p);
        _mm256_storeu_pd(out + i,
                         _mm256_sub_pd(_mm256_mul_pd(cub, ve), _mm256_mul_pd(vg, p)));
    }
    for (; i < n; ++i) {
        double p = phi[i];
        out[i] = (p * p * p - p) * inv_eps2 - gamma * p;
    }
}

double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double sum_v(const double* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + W <= n; i += W) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i];
    return s;
}

double dot_v(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + W <= n; i += W)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s = std::fma(a[i], b[i], s);
    return s;
}

double max_abs_v(const double* a, std::size_t n) {
    const __m256d signmask = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + W <= n; i += W)
        acc = _mm256_max_pd(acc, _mm256_andnot_pd(signmask, _mm256_loadu_pd(a + i)));
    double m[W];
    _mm256_storeu_pd(m, acc);
    double r = std::max(std::max(m[0], m[1]), std::max(m[2], m[3]));
    for (; i < n; ++i) r = std::max(r, std::fabs(a[i]));
    return r;
}

}  // namespace

const Ops avx2_ops = {mul_v,         fmadd_v,      fnmadd_v, scale_v, lincomb_v,
                      double_well_v, well_prime_v, sum_v,    dot_v,   max_abs_v};

}  // namespace chns::kern
