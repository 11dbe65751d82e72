#pragma once

// Uniformly sampled real periodic functions of one variable and the basic
// quadrature helpers used throughout.  All integrals on periodic uniform
// grids are the trapezoid rule, which collapses to step * (compensated sum
// of samples); compensated summation keeps results independent of any
// internal partitioning.

#include <vector>

#include "wrs/simd.hpp"

namespace wrs {

struct PeriodicProfile {
    std::vector<double> samples;  // values at x_i = i * period / size()
    double period = 0.0;

    int size() const { return static_cast<int>(samples.size()); }
    double dx() const { return period / static_cast<double>(size()); }
    double x(int i) const {
        return period * static_cast<double>(i) / static_cast<double>(size());
    }
};

// Validating factory: even sample count >= 16, positive period.
PeriodicProfile make_profile(std::vector<double> samples, double period);

// Build by sampling f on the uniform grid.
template <typename F>
PeriodicProfile sample_profile(int n, double period, F&& f) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] =
            f(period * static_cast<double>(i) / static_cast<double>(n));
    return make_profile(std::move(v), period);
}

// Integral over one period (trapezoid on the periodic grid).
double integrate(const PeriodicProfile& f);
// Integral of the pointwise product f*g.
double inner(const PeriodicProfile& f, const PeriodicProfile& g);
double mean(const PeriodicProfile& f);
double max_abs(const PeriodicProfile& f);

}  // namespace wrs
