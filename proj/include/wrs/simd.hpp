#pragma once

// Small vector-kernel layer: elementwise arithmetic and compensated
// reductions over contiguous double arrays, with a scalar reference
// implementation and an AVX2/FMA implementation selected at runtime.
//
// Both implementations follow the same fixed four-lane accumulation
// structure (lane j holds elements 4t+j), the same tail handling and the
// same final combine, and reductions use plain (non-fused) multiplies, so
// scalar and AVX2 results are bitwise identical.  The elementwise fused
// ops use std::fma in the scalar path and the FMA intrinsic in the AVX2
// path, which are the same correctly-rounded operation.

#include <cstddef>
#include <vector>

namespace wrs::simd {

enum class Backend { Scalar, Avx2 };

// True when the running CPU supports AVX2+FMA and the kernels were built.
bool avx2_available() noexcept;
Backend active_backend() noexcept;
// Force a backend (tests use this to compare paths); throws DomainError if
// the requested backend is not available on this machine/build.
void set_backend(Backend b);

// dst = a * b, a + b, a - b  (elementwise)
void mul(const double* a, const double* b, double* dst, std::size_t n);
void add(const double* a, const double* b, double* dst, std::size_t n);
void sub(const double* a, const double* b, double* dst, std::size_t n);
// dst = c * a
void scale(const double* a, double c, double* dst, std::size_t n);
// dst = a * b + c  (fused)
void fmadd(const double* a, const double* b, const double* c, double* dst,
           std::size_t n);
// y += alpha * x  (fused)
void axpy(double alpha, const double* x, double* y, std::size_t n);

// Compensated (Kahan) reductions with the fixed lane structure.
double sum(const double* a, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double sum_squares(const double* a, std::size_t n);
double max_abs(const double* a, std::size_t n);

// ------------------------------------------------------------------------
// std::vector conveniences.

inline std::vector<double> mul(const std::vector<double>& a,
                               const std::vector<double>& b) {
    std::vector<double> r(a.size());
    mul(a.data(), b.data(), r.data(), a.size());
    return r;
}
inline std::vector<double> add(const std::vector<double>& a,
                               const std::vector<double>& b) {
    std::vector<double> r(a.size());
    add(a.data(), b.data(), r.data(), a.size());
    return r;
}
inline std::vector<double> sub(const std::vector<double>& a,
                               const std::vector<double>& b) {
    std::vector<double> r(a.size());
    sub(a.data(), b.data(), r.data(), a.size());
    return r;
}
inline std::vector<double> scale(const std::vector<double>& a, double c) {
    std::vector<double> r(a.size());
    scale(a.data(), c, r.data(), a.size());
    return r;
}
inline double sum(const std::vector<double>& a) {
    return sum(a.data(), a.size());
}
inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    return dot(a.data(), b.data(), a.size());
}
inline double sum_squares(const std::vector<double>& a) {
    return sum_squares(a.data(), a.size());
}
inline double max_abs(const std::vector<double>& a) {
    return max_abs(a.data(), a.size());
}

// ------------------------------------------------------------------------
// Internal: the per-backend kernel tables (used by the dispatcher and by
// the equivalence tests; not part of the normal API surface).

struct KernelTable {
    void (*mul)(const double*, const double*, double*, std::size_t);
    void (*add)(const double*, const double*, double*, std::size_t);
    void (*sub)(const double*, const double*, double*, std::size_t);
    void (*scale)(const double*, double, double*, std::size_t);
    void (*fmadd)(const double*, const double*, const double*, double*,
                  std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    double (*sum)(const double*, std::size_t);
    double (*dot)(const double*, const double*, std::size_t);
    double (*sum_squares)(const double*, std::size_t);
    double (*max_abs)(const double*, std::size_t);
};

const KernelTable& scalar_kernels() noexcept;
// Null pointers when the AVX2 translation unit was compiled out.
const KernelTable& avx2_kernels() noexcept;

}  // namespace wrs::simd
