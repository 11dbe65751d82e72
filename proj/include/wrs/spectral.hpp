#pragma once

// Fourier-side operations on uniformly sampled data (FFTW backend):
// derivatives, the zero-mean antiderivative, trigonometric resampling and
// sub-grid shifts, plus derivatives of antiperiodic data via half-integer
// modes.  Everything is double precision and deterministic (FFTW_ESTIMATE
// plans; no runtime tuning).

#include <complex>
#include <vector>

#include "wrs/profile.hpp"

namespace wrs::spectral {

// Unnormalized forward / 1/n-normalized inverse complex transforms.
void fft(const std::vector<std::complex<double>>& in,
         std::vector<std::complex<double>>& out);
void ifft(const std::vector<std::complex<double>>& in,
          std::vector<std::complex<double>>& out);

// d^order/dx^order of a real periodic sample vector (period T).  For odd
// orders the Nyquist mode is zeroed to keep the result real.
std::vector<double> derivative(const std::vector<double>& f, double period,
                               int order = 1);

// The unique zero-mean periodic antiderivative; the caller is responsible
// for the mean gate (see mkdv::antiderivative_periodic for the gated form).
std::vector<double> antiderivative_zero_mean(const std::vector<double>& f,
                                             double period);

// Trigonometric interpolation onto m uniform points.
std::vector<double> resample(const std::vector<double>& f, std::size_t m);

// g(x) = f(x - delta) by phase rotation of the spectrum.
std::vector<double> shift(const std::vector<double>& f, double period,
                          double delta);

// d^order/dx^order for data antiperiodic over the period: f(x+T) = -f(x).
// Demodulate by exp(-i pi x / T), differentiate on the shifted frequencies
// k + pi/T (all half-integers, a symmetric set), re-modulate.
std::vector<double> antiperiodic_derivative(const std::vector<double>& f,
                                            double period, int order = 1);

// Profile conveniences.
PeriodicProfile derivative(const PeriodicProfile& f, int order = 1);
PeriodicProfile antiderivative_zero_mean(const PeriodicProfile& f);
PeriodicProfile resample(const PeriodicProfile& f, int m);
PeriodicProfile shift(const PeriodicProfile& f, double delta);

}  // namespace wrs::spectral
