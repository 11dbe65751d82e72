// Scalar reference kernels.  This translation unit is compiled with
// -ffp-contract=off so that the explicit std::fma calls below are the only
// fused operations and the plain multiplies in the reductions stay plain —
// the preconditions for bitwise agreement with the AVX2 kernels.

#include <cmath>
#include <cstddef>

#include "wrs/simd.hpp"
#include "wrs/simd_detail.hpp"

namespace wrs::simd {
namespace {

using detail::Lanes;

void k_mul(const double* a, const double* b, double* dst, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

void k_add(const double* a, const double* b, double* dst, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] + b[i];
}

void k_sub(const double* a, const double* b, double* dst, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] - b[i];
}

void k_scale(const double* a, double c, double* dst, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = c * a[i];
}

void k_fmadd(const double* a, const double* b, const double* c, double* dst,
             std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = std::fma(a[i], b[i], c[i]);
}

void k_axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = std::fma(alpha, x[i], y[i]);
}

double k_sum(const double* a, std::size_t n) {
    Lanes ln;
    const std::size_t nb = n / 4;
    for (std::size_t t = 0; t < nb; ++t)
        for (int j = 0; j < 4; ++j)
            detail::kahan_add(ln.s[j], ln.c[j], a[4 * t + j]);
    detail::tail_sum(ln, a, 4 * nb, n);
    return detail::combine(ln);
}

double k_dot(const double* a, const double* b, std::size_t n) {
    Lanes ln;
    const std::size_t nb = n / 4;
    for (std::size_t t = 0; t < nb; ++t)
        for (int j = 0; j < 4; ++j) {
            const double p = a[4 * t + j] * b[4 * t + j];
            detail::kahan_add(ln.s[j], ln.c[j], p);
        }
    detail::tail_dot(ln, a, b, 4 * nb, n);
    return detail::combine(ln);
}

double k_sum_squares(const double* a, std::size_t n) {
    Lanes ln;
    const std::size_t nb = n / 4;
    for (std::size_t t = 0; t < nb; ++t)
        for (int j = 0; j < 4; ++j) {
            const double p = a[4 * t + j] * a[4 * t + j];
            detail::kahan_add(ln.s[j], ln.c[j], p);
        }
    detail::tail_sum_squares(ln, a, 4 * nb, n);
    return detail::combine(ln);
}

double k_max_abs(const double* a, std::size_t n) {
    double m[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t nb = n / 4;
    for (std::size_t t = 0; t < nb; ++t)
        for (int j = 0; j < 4; ++j)
            m[j] = std::max(m[j], std::fabs(a[4 * t + j]));
    return detail::combine_max(m, a, 4 * nb, n);
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
    static const KernelTable table = {k_mul, k_add,  k_sub, k_scale,
                                      k_fmadd, k_axpy, k_sum, k_dot,
                                      k_sum_squares, k_max_abs};
    return table;
}

}  // namespace wrs::simd
