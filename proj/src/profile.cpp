#include "wrs/profile.hpp"

#include <utility>

#include "wrs/errors.hpp"

namespace wrs {

PeriodicProfile make_profile(std::vector<double> samples, double period) {
    const auto n = samples.size();
    if (n < 16 || n % 2 != 0)
        throw GridTooSmall("profile: sample count must be even and >= 16");
    if (!(period > 0.0)) throw DomainError("profile: period must be positive");
    return PeriodicProfile{std::move(samples), period};
}

double integrate(const PeriodicProfile& f) {
    return f.dx() * simd::sum(f.samples);
}

double inner(const PeriodicProfile& f, const PeriodicProfile& g) {
    return f.dx() * simd::dot(f.samples, g.samples);
}

double mean(const PeriodicProfile& f) {
    return simd::sum(f.samples) / static_cast<double>(f.size());
}

double max_abs(const PeriodicProfile& f) { return simd::max_abs(f.samples); }

}  // namespace wrs
