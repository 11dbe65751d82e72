#include "wrs/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "wrs/errors.hpp"

namespace wrs::spectral {
namespace {

// Plan cache keyed by transform size.  Plans are created once under a lock
// (FFTW plan creation is not thread safe) with FFTW_ESTIMATE, so planning is
// deterministic, and FFTW_UNALIGNED so they accept ordinary vector storage.
// fftw_execute_dft on distinct arrays is safe concurrently.
struct Plans {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

Plans& plans_for(int n) {
    static std::map<int, Plans> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<std::complex<double>> a(static_cast<std::size_t>(n)),
        b(static_cast<std::size_t>(n));
    auto* pa = reinterpret_cast<fftw_complex*>(a.data());
    auto* pb = reinterpret_cast<fftw_complex*>(b.data());
    Plans p;
    p.fwd = fftw_plan_dft_1d(n, pa, pb, FFTW_FORWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_1d(n, pa, pb, FFTW_BACKWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
    return cache.emplace(n, p).first->second;
}

void run(fftw_plan plan, const std::vector<std::complex<double>>& in,
         std::vector<std::complex<double>>& out) {
    out.resize(in.size());
    auto* pi = reinterpret_cast<fftw_complex*>(
        const_cast<std::complex<double>*>(in.data()));
    auto* po = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(plan, pi, po);
}

// Signed mode number for slot j of an n-point transform; the Nyquist slot
// j = n/2 maps to +n/2 here and is special-cased by each operation.
inline int mode_of(int j, int n) { return j <= n / 2 ? j : j - n; }

std::vector<std::complex<double>> to_complex(const std::vector<double>& f) {
    std::vector<std::complex<double>> c(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) c[i] = f[i];
    return c;
}

std::vector<double> real_part(const std::vector<std::complex<double>>& c) {
    std::vector<double> r(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) r[i] = c[i].real();
    return r;
}

// i^order as an exact complex unit.
inline std::complex<double> i_pow(int order) {
    switch (((order % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

}  // namespace

void fft(const std::vector<std::complex<double>>& in,
         std::vector<std::complex<double>>& out) {
    const int n = static_cast<int>(in.size());
    if (n == 0) throw DomainError("spectral: empty transform");
    run(plans_for(n).fwd, in, out);
}

void ifft(const std::vector<std::complex<double>>& in,
          std::vector<std::complex<double>>& out) {
    const int n = static_cast<int>(in.size());
    if (n == 0) throw DomainError("spectral: empty transform");
    run(plans_for(n).bwd, in, out);
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& z : out) z *= inv;
}

std::vector<double> derivative(const std::vector<double>& f, double period,
                               int order) {
    const int n = static_cast<int>(f.size());
    if (n < 4) throw GridTooSmall("spectral: need at least 4 samples");
    const double k1 = 2.0 * std::numbers::pi / period;
    std::vector<std::complex<double>> in = to_complex(f), hat, out;
    fft(in, hat);
    const std::complex<double> iu = i_pow(order);
    for (int j = 0; j < n; ++j) {
        const int m = mode_of(j, n);
        if (order % 2 != 0 && j == n / 2) {
            hat[static_cast<std::size_t>(j)] = 0.0;  // unpaired Nyquist mode
            continue;
        }
        const double k = k1 * static_cast<double>(m);
        hat[static_cast<std::size_t>(j)] *= iu * std::pow(k, order);
    }
    ifft(hat, out);
    return real_part(out);
}

std::vector<double> antiderivative_zero_mean(const std::vector<double>& f,
                                             double period) {
    const int n = static_cast<int>(f.size());
    if (n < 4) throw GridTooSmall("spectral: need at least 4 samples");
    const double k1 = 2.0 * std::numbers::pi / period;
    std::vector<std::complex<double>> in = to_complex(f), hat, out;
    fft(in, hat);
    hat[0] = 0.0;  // drop the mean; the result is the zero-mean choice
    for (int j = 1; j < n; ++j) {
        if (j == n / 2) {
            hat[static_cast<std::size_t>(j)] = 0.0;
            continue;
        }
        const double k = k1 * static_cast<double>(mode_of(j, n));
        hat[static_cast<std::size_t>(j)] /= std::complex<double>(0.0, k);
    }
    ifft(hat, out);
    return real_part(out);
}

std::vector<double> resample(const std::vector<double>& f, std::size_t m) {
    const int n = static_cast<int>(f.size());
    const int nm = static_cast<int>(m);
    if (n < 4 || nm < 4) throw GridTooSmall("spectral: need at least 4 samples");
    if (nm == n) return f;
    std::vector<std::complex<double>> in = to_complex(f), hat, out;
    fft(in, hat);
    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<std::complex<double>> coef(m, 0.0);
    if (nm > n) {
        // Pad: copy modes |q| < n/2, split the old Nyquist between +-n/2.
        for (int j = 0; j < n; ++j) {
            const int q = mode_of(j, n);
            const std::complex<double> c = hat[static_cast<std::size_t>(j)] * inv_n;
            if (j == n / 2) {
                coef[static_cast<std::size_t>(n / 2)] += 0.5 * c;
                coef[static_cast<std::size_t>(nm - n / 2)] += 0.5 * c;
            } else {
                const int slot = q >= 0 ? q : q + nm;
                coef[static_cast<std::size_t>(slot)] = c;
            }
        }
    } else {
        // Truncate: keep |q| < m/2, fold the conjugate pair onto the new
        // Nyquist slot (real for real input).
        for (int q = -nm / 2 + 1; q < nm / 2; ++q) {
            const int src = q >= 0 ? q : q + n;
            const int dst = q >= 0 ? q : q + nm;
            coef[static_cast<std::size_t>(dst)] =
                hat[static_cast<std::size_t>(src)] * inv_n;
        }
        coef[static_cast<std::size_t>(nm / 2)] =
            (hat[static_cast<std::size_t>(nm / 2)] +
             hat[static_cast<std::size_t>(n - nm / 2)]) *
            inv_n;
    }
    // coef holds true Fourier coefficients; synthesize with the raw
    // backward transform (no 1/m normalization).
    out.resize(m);
    run(plans_for(nm).bwd, coef, out);
    return real_part(out);
}

std::vector<double> shift(const std::vector<double>& f, double period,
                          double delta) {
    const int n = static_cast<int>(f.size());
    if (n < 4) throw GridTooSmall("spectral: need at least 4 samples");
    const double k1 = 2.0 * std::numbers::pi / period;
    std::vector<std::complex<double>> in = to_complex(f), hat, out;
    fft(in, hat);
    for (int j = 0; j < n; ++j) {
        const double k = k1 * static_cast<double>(mode_of(j, n));
        if (j == n / 2) {
            // Keep the result real: the Nyquist mode can only be scaled.
            hat[static_cast<std::size_t>(j)] *= std::cos(k * delta);
        } else {
            hat[static_cast<std::size_t>(j)] *=
                std::exp(std::complex<double>(0.0, -k * delta));
        }
    }
    ifft(hat, out);
    return real_part(out);
}

std::vector<double> antiperiodic_derivative(const std::vector<double>& f,
                                            double period, int order) {
    const int n = static_cast<int>(f.size());
    if (n < 4) throw GridTooSmall("spectral: need at least 4 samples");
    const double pi_over_t = std::numbers::pi / period;
    const double k1 = 2.0 * std::numbers::pi / period;
    std::vector<std::complex<double>> g(f.size()), hat, out;
    for (int j = 0; j < n; ++j) {
        const double x = period * static_cast<double>(j) / static_cast<double>(n);
        g[static_cast<std::size_t>(j)] =
            f[static_cast<std::size_t>(j)] *
            std::exp(std::complex<double>(0.0, -pi_over_t * x));
    }
    fft(g, hat);
    const std::complex<double> iu = i_pow(order);
    for (int j = 0; j < n; ++j) {
        // Slot n/2 maps to -n/2 so the shifted frequencies k + pi/T form the
        // symmetric half-integer set.
        const int m = j < n / 2 ? j : j - n;
        const double k = k1 * static_cast<double>(m) + pi_over_t;
        hat[static_cast<std::size_t>(j)] *= iu * std::pow(k, order);
    }
    ifft(hat, out);
    std::vector<double> r(f.size());
    for (int j = 0; j < n; ++j) {
        const double x = period * static_cast<double>(j) / static_cast<double>(n);
        r[static_cast<std::size_t>(j)] =
            (out[static_cast<std::size_t>(j)] *
             std::exp(std::complex<double>(0.0, pi_over_t * x)))
                .real();
    }
    return r;
}

PeriodicProfile derivative(const PeriodicProfile& f, int order) {
    return PeriodicProfile{derivative(f.samples, f.period, order), f.period};
}

PeriodicProfile antiderivative_zero_mean(const PeriodicProfile& f) {
    return PeriodicProfile{antiderivative_zero_mean(f.samples, f.period),
                           f.period};
}

PeriodicProfile resample(const PeriodicProfile& f, int m) {
    return PeriodicProfile{resample(f.samples, static_cast<std::size_t>(m)),
                           f.period};
}

PeriodicProfile shift(const PeriodicProfile& f, double delta) {
    return PeriodicProfile{shift(f.samples, f.period, delta), f.period};
}

}  // namespace wrs::spectral
