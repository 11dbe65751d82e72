// AVX2/FMA kernels.  Compiled with -mavx2 -mfma and, like the scalar TU,
// with -ffp-contract=off: fused operations appear only where the FMA
// intrinsic is written, and the reduction multiplies stay unfused so every
// lane performs exactly the scalar reference arithmetic.

#include <cmath>
#include <cstddef>

#include "wrs/simd.hpp"
#include "wrs/simd_detail.hpp"

#ifndef WRS_NO_AVX2
#include <immintrin.h>
#endif

namespace wrs::simd {

#ifndef WRS_NO_AVX2

namespace {

using detail::Lanes;

void k_mul(const double* a, const double* b, double* dst, std::size_t n) {
    const std::size_t nb = n / 4;
    for (std::size_t t = 0; t < nb; ++t) {
        const __m256d x = _mm256_loadu_pd(a + 4 * t);
        const __m256d y = _mm256_loadu_pd(b + 4 * t);
        _mm256_storeu_pd(dst + 4 * t, _mm256_mul_pd(x, y));
    }
    for (std::size_t i = 4 * nb; i < n; ++i) dst[i] = a[i] * b[i];
}

void k_add(const double* a, const double* b, double* dst, std::size_t n) {
    const std::size_t nb = n / 4;
    for (std::size_t t = 0; t < nb; ++t) {
        const __m256d x = _mm256_loadu_pd(a + 4 * t);
        const __m256d y = _mm256_loadu_pd(b + 4 * t);
        _mm256_storeu_pd(dst + 4 * t, _mm256_add_pd(x, y));
    }
    for (std::size_t i = 4 * nb; i < n; ++i) dst[i] = a[i] + b[i];
}

void k_sub(const double* a, const double* b, double* dst, std::size_t n) {
    const std::size_t nb = n / 4;
    for (std::size_t t = 0; t < nb; ++t) {
        const __m256d x = _mm256_loadu_pd(a + 4 * t);
        const __m256d y = _mm256_loadu_pd(b + 4 * t);
        _mm256_storeu_pd(dst + 4 * t, _mm256_sub_pd(x, y));
    }
    for (std::size_t i = 4 * nb; i < n; ++i) dst[i] = a[i] - b[i];
}

void k_scale(const double* a, double c, double* dst, std::size_t n) {
    const __m256d vc = _mm256_set1_pd(c);
    const std::size_t nb = n / 4;
    for (std::size_t t = 0; t < nb; ++t) {
        const __m256d x = _mm256_loadu_pd(a + 4 * t);
        _mm256_storeu_pd(dst + 4 * t, _mm256_mul_pd(vc, x));
    }
    for (std::size_t i = 4 * nb; i < n; ++i) dst[i] = c * a[i];
}

void k_fmadd(const double* a, const double* b, const double* c, double* dst,
             std::size_t n) {
    const std::size_t nb = n / 4;
    for (std::size_t t = 0; t < nb; ++t) {
        const __m256d x = _mm256_loadu_pd(a + 4 * t);
        const __m256d y = _mm256_loadu_pd(b + 4 * t);
        const __m256d z = _mm256_loadu_pd(c + 4 * t);
        _mm256_storeu_pd(dst + 4 * t, _mm256_fmadd_pd(x, y, z));
    }
    for (std::size_t i = 4 * nb; i < n; ++i) dst[i] = std::fma(a[i], b[i], c[i]);
}

void k_axpy(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    const std::size_t nb = n / 4;
    for (std::size_t t = 0; t < nb; ++t) {
        const __m256d vx = _mm256_loadu_pd(x + 4 * t);
        const __m256d vy = _mm256_loadu_pd(y + 4 * t);
        _mm256_storeu_pd(y + 4 * t, _mm256_fmadd_pd(va, vx, vy));
    }
    for (std::size_t i = 4 * nb; i < n; ++i) y[i] = std::fma(alpha, x[i], y[i]);
}

// One vector-Kahan step: lanewise identical to the scalar kahan_add.
inline void vkahan(__m256d& s, __m256d& c, __m256d x) {
    const __m256d y = _mm256_sub_pd(x, c);
    const __m256d t = _mm256_add_pd(s, y);
    c = _mm256_sub_pd(_mm256_sub_pd(t, s), y);
    s = t;
}

inline Lanes unload(__m256d s, __m256d c) {
    Lanes ln;
    _mm256_storeu_pd(ln.s, s);
    _mm256_storeu_pd(ln.c, c);
    return ln;
}

double k_sum(const double* a, std::size_t n) {
    __m256d s = _mm256_setzero_pd(), c = _mm256_setzero_pd();
    const std::size_t nb = n / 4;
    for (std::size_t t = 0; t < nb; ++t)
        vkahan(s, c, _mm256_loadu_pd(a + 4 * t));
    Lanes ln = unload(s, c);
    detail::tail_sum(ln, a, 4 * nb, n);
    return detail::combine(ln);
}

double k_dot(const double* a, const double* b, std::size_t n) {
    __m256d s = _mm256_setzero_pd(), c = _mm256_setzero_pd();
    const std::size_t nb = n / 4;
    for (std::size_t t = 0; t < nb; ++t) {
        const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(a + 4 * t),
                                        _mm256_loadu_pd(b + 4 * t));
        vkahan(s, c, p);
    }
    Lanes ln = unload(s, c);
    detail::tail_dot(ln, a, b, 4 * nb, n);
    return detail::combine(ln);
}

double k_sum_squares(const double* a, std::size_t n) {
    __m256d s = _mm256_setzero_pd(), c = _mm256_setzero_pd();
    const std::size_t nb = n / 4;
    for (std::size_t t = 0; t < nb; ++t) {
        const __m256d x = _mm256_loadu_pd(a + 4 * t);
        vkahan(s, c, _mm256_mul_pd(x, x));
    }
    Lanes ln = unload(s, c);
    detail::tail_sum_squares(ln, a, 4 * nb, n);
    return detail::combine(ln);
}

double k_max_abs(const double* a, std::size_t n) {
    const __m256d signmask = _mm256_set1_pd(-0.0);
    __m256d vm = _mm256_setzero_pd();
    const std::size_t nb = n / 4;
    for (std::size_t t = 0; t < nb; ++t) {
        const __m256d x = _mm256_andnot_pd(signmask, _mm256_loadu_pd(a + 4 * t));
        vm = _mm256_max_pd(vm, x);
    }
    double m[4];
    _mm256_storeu_pd(m, vm);
    return detail::combine_max(m, a, 4 * nb, n);
}

}  // namespace

const KernelTable& avx2_kernels() noexcept {
    static const KernelTable table = {k_mul, k_add,  k_sub, k_scale,
                                      k_fmadd, k_axpy, k_sum, k_dot,
                                      k_sum_squares, k_max_abs};
    return table;
}

#else  // WRS_NO_AVX2

const KernelTable& avx2_kernels() noexcept {
    static const KernelTable table = {nullptr, nullptr, nullptr, nullptr,
                                      nullptr, nullptr, nullptr, nullptr,
                                      nullptr, nullptr};
    return table;
}

#endif

}  // namespace wrs::simd
