#pragma once

// Shared pieces of the two kernel translation units: the Kahan step, the
// reduction tail handling and the lane combine.  Both TUs are compiled with
// FP contraction disabled, so these inline functions have identical
// semantics in either one; keeping tails and combines textually shared is
// what makes the scalar/AVX2 bitwise-equality guarantee easy to audit.

#include <cmath>
#include <cstddef>

namespace wrs::simd::detail {

struct Lanes {
    double s[4] = {0.0, 0.0, 0.0, 0.0};  // running sums
    double c[4] = {0.0, 0.0, 0.0, 0.0};  // Kahan compensations
};

inline void kahan_add(double& s, double& c, double x) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
}

// Fold the trailing n%4 elements of a sum into the lane accumulators,
// starting at index i0 = 4*(n/4); lane choice i%4 matches the block layout.
inline void tail_sum(Lanes& ln, const double* a, std::size_t i0,
                     std::size_t n) {
    for (std::size_t i = i0; i < n; ++i)
        kahan_add(ln.s[i % 4], ln.c[i % 4], a[i]);
}

inline void tail_dot(Lanes& ln, const double* a, const double* b,
                     std::size_t i0, std::size_t n) {
    for (std::size_t i = i0; i < n; ++i) {
        const double p = a[i] * b[i];
        kahan_add(ln.s[i % 4], ln.c[i % 4], p);
    }
}

inline void tail_sum_squares(Lanes& ln, const double* a, std::size_t i0,
                             std::size_t n) {
    for (std::size_t i = i0; i < n; ++i) {
        const double p = a[i] * a[i];
        kahan_add(ln.s[i % 4], ln.c[i % 4], p);
    }
}

// Deterministic final combine: lanes in index order, then the leftover
// compensations (each lane's c holds the part not yet applied, negated).
inline double combine(const Lanes& ln) {
    double tot = 0.0, cc = 0.0;
    for (int j = 0; j < 4; ++j) kahan_add(tot, cc, ln.s[j]);
    for (int j = 0; j < 4; ++j) kahan_add(tot, cc, -ln.c[j]);
    return tot;
}

inline double combine_max(const double m[4], const double* a, std::size_t i0,
                          std::size_t n) {
    double r = 0.0;
    for (int j = 0; j < 4; ++j) r = std::max(r, m[j]);
    for (std::size_t i = i0; i < n; ++i) r = std::max(r, std::fabs(a[i]));
    return r;
}

}  // namespace wrs::simd::detail
