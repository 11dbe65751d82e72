#include "wrs/elliptic.hpp"

#include <cmath>
#include <numbers>

#include "wrs/errors.hpp"

namespace wrs::elliptic {
namespace {

constexpr double kPi = std::numbers::pi;

void check_modulus_range(double k) {
    if (!(k >= 0.0 && k <= 1.0))
        throw DomainError("elliptic: modulus must lie in [0, 1]");
}

}  // namespace

EllipticModulus EllipticModulus::from_k(double k) {
    check_modulus_range(k);
    return EllipticModulus{k, k * k};
}

EllipticModulus EllipticModulus::from_ksq(double ksq) {
    if (!(ksq >= 0.0 && ksq <= 1.0))
        throw DomainError("elliptic: squared modulus must lie in [0, 1]");
    return EllipticModulus{std::sqrt(ksq), ksq};
}

EnergyFamilyParams::EnergyFamilyParams(double a) {
    if (!(a >= 0.0)) throw DomainError("elliptic: family requires alpha >= 0");
    alpha = a;
    beta = std::sqrt(1.0 + 16.0 * a);
    C = (1.0 + beta) / 8.0;
    k = EllipticModulus::from_ksq((1.0 + beta) / (2.0 * beta));
}

CompleteElliptic complete_elliptic(const EllipticModulus& mod) {
    check_modulus_range(mod.k);
    if (mod.k == 1.0)
        throw DivergenceError("elliptic: F(k) diverges at k = 1");

    // AGM iteration: a_{n+1} = (a_n + b_n)/2, b_{n+1} = sqrt(a_n b_n),
    // c_{n+1} = (a_n - b_n)/2, starting from a_0 = 1, b_0 = k', c_0 = k.
    // Then F = pi / (2 a_inf) and E = F (1 - sum 2^{n-1} c_n^2).
    double a = 1.0;
    double b = std::sqrt(1.0 - mod.ksq);
    double c = mod.k;
    double csum = 0.5 * c * c;  // 2^{-1} c_0^2
    double weight = 1.0;
    for (int iter = 0; iter < 64 && c > 1e-17 * a; ++iter) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        c = 0.5 * (a - b);
        a = an;
        b = bn;
        csum += weight * c * c;
        weight *= 2.0;
    }
    CompleteElliptic out;
    out.F = kPi / (2.0 * a);
    out.E = out.F * (1.0 - csum);
    return out;
}

double f_of_k(const EllipticModulus& mod) {
    if (!(mod.ksq > 0.5) || mod.ksq > 1.0)
        throw DomainError("elliptic: f(k) requires 1/2 < k^2 <= 1");
    if (mod.k == 1.0) return 1.0;  // limit value: E(1) = 1, (1-k^2)F -> 0
    const CompleteElliptic fe = complete_elliptic(mod);
    return (fe.E - (1.0 - mod.ksq) * fe.F) / std::sqrt(2.0 * mod.ksq - 1.0);
}

double energy_integral(const EnergyFamilyParams& params) {
    if (!(params.alpha > 0.0))
        throw DomainError("elliptic: energy integral requires alpha > 0");
    const CompleteElliptic fe = complete_elliptic(params.k);
    const double rb = std::sqrt(params.beta);
    return 0.5 * (rb * fe.E - (params.beta - 1.0) / (2.0 * rb) * fe.F);
}

double energy_integral_quadrature(const EnergyFamilyParams& params) {
    if (!(params.alpha > 0.0))
        throw DomainError("elliptic: energy integral requires alpha > 0");
    const double beta = params.beta;
    const double C = params.C;
    // Substituting v = C sin^2(theta) removes both endpoint singularities:
    //   I = int_0^{pi/2} 2 C cos^2(theta) / sqrt(beta - 4 C sin^2(theta)) dtheta
    // with beta - 4C = (beta - 1)/2 > 0 for alpha > 0, so the integrand is
    // smooth; composite Simpson with interval doubling converges fast.
    const auto g = [beta, C](double th) {
        const double s = std::sin(th);
        const double cth = std::cos(th);
        return 2.0 * C * cth * cth / std::sqrt(beta - 4.0 * C * s * s);
    };
    const double a = 0.0, b = kPi / 2.0;
    double prev = 0.0;
    for (int n = 64; n <= (1 << 21); n *= 2) {
        const double h = (b - a) / n;
        double odd = 0.0, even = 0.0;
        for (int i = 1; i < n; i += 2) odd += g(a + i * h);
        for (int i = 2; i < n; i += 2) even += g(a + i * h);
        const double cur = h / 3.0 * (g(a) + g(b) + 4.0 * odd + 2.0 * even);
        if (n > 64 && std::abs(cur - prev) <= 1e-11 * std::abs(cur)) return cur;
        prev = cur;
    }
    return prev;
}

EllipticModulus solve_two_E_equals_F() {
    const auto g = [](double ksq) {
        const CompleteElliptic fe =
            complete_elliptic(EllipticModulus::from_ksq(ksq));
        return 2.0 * fe.E - fe.F;
    };
    double lo = 0.75, hi = 0.95;
    double glo = g(lo);
    if (!(glo > 0.0 && g(hi) < 0.0))
        throw DomainError("elliptic: bracket [0.75, 0.95] does not straddle root");
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return EllipticModulus::from_ksq(0.5 * (lo + hi));
}

LegendreResiduals legendre_derivative_residuals(const EllipticModulus& mod,
                                                double h) {
    if (!(h > 0.0)) throw DomainError("elliptic: step h must be positive");
    const double k = mod.k;
    if (!(k - 2.0 * h > 0.0 && k + 2.0 * h < 1.0))
        throw DomainError("elliptic: stencil k +- 2h leaves (0, 1)");

    const auto F_at = [](double kk) {
        return complete_elliptic(EllipticModulus::from_k(kk)).F;
    };
    const auto dF = [&](double kk) {
        return (F_at(kk + h) - F_at(kk - h)) / (2.0 * h);
    };
    const CompleteElliptic fe = complete_elliptic(mod);

    LegendreResiduals out;
    out.res1 =
        std::abs(fe.E - (1.0 - k * k) * fe.F - k * (1.0 - k * k) * dF(k));

    const auto G = [&](double kk) { return kk * (1.0 - kk * kk) * dF(kk); };
    out.res2 = std::abs((G(k + h) - G(k - h)) / (2.0 * h) - k * fe.F);
    return out;
}

}  // namespace wrs::elliptic
