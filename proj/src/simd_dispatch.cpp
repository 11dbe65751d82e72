// Runtime backend selection: AVX2+FMA when the CPU has it (and the kernels
// were built), scalar otherwise.  Tests can pin either backend explicitly.

#include <atomic>

#include "wrs/errors.hpp"
#include "wrs/simd.hpp"

namespace wrs::simd {
namespace {

bool compiled_avx2() noexcept { return avx2_kernels().mul != nullptr; }

bool cpu_avx2() noexcept {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

std::atomic<const KernelTable*> g_table{nullptr};
std::atomic<Backend> g_backend{Backend::Scalar};

const KernelTable* init_table() {
    const KernelTable* t;
    if (compiled_avx2() && cpu_avx2()) {
        t = &avx2_kernels();
        g_backend.store(Backend::Avx2, std::memory_order_relaxed);
    } else {
        t = &scalar_kernels();
        g_backend.store(Backend::Scalar, std::memory_order_relaxed);
    }
    g_table.store(t, std::memory_order_release);
    return t;
}

inline const KernelTable& table() {
    const KernelTable* t = g_table.load(std::memory_order_acquire);
    return t ? *t : *init_table();
}

}  // namespace

bool avx2_available() noexcept { return compiled_avx2() && cpu_avx2(); }

Backend active_backend() noexcept {
    table();  // ensure initialized
    return g_backend.load(std::memory_order_relaxed);
}

void set_backend(Backend b) {
    if (b == Backend::Avx2 && !avx2_available())
        throw DomainError("simd: AVX2 backend not available on this machine");
    g_table.store(b == Backend::Avx2 ? &avx2_kernels() : &scalar_kernels(),
                  std::memory_order_release);
    g_backend.store(b, std::memory_order_relaxed);
}

void mul(const double* a, const double* b, double* dst, std::size_t n) {
    table().mul(a, b, dst, n);
}
void add(const double* a, const double* b, double* dst, std::size_t n) {
    table().add(a, b, dst, n);
}
void sub(const double* a, const double* b, double* dst, std::size_t n) {
    table().sub(a, b, dst, n);
}
void scale(const double* a, double c, double* dst, std::size_t n) {
    table().scale(a, c, dst, n);
}
void fmadd(const double* a, const double* b, const double* c, double* dst,
           std::size_t n) {
    table().fmadd(a, b, c, dst, n);
}
void axpy(double alpha, const double* x, double* y, std::size_t n) {
    table().axpy(alpha, x, y, n);
}
double sum(const double* a, std::size_t n) { return table().sum(a, n); }
double dot(const double* a, const double* b, std::size_t n) {
    return table().dot(a, b, n);
}
double sum_squares(const double* a, std::size_t n) {
    return table().sum_squares(a, n);
}
double max_abs(const double* a, std::size_t n) {
    return table().max_abs(a, n);
}

}  // namespace wrs::simd
