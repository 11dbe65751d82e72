#include "wrs/willmore.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "wrs/elliptic.hpp"
#include "wrs/errors.hpp"
#include "wrs/simd.hpp"
#include "wrs/spectral.hpp"

namespace wrs::willmore {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrt2 = 1.414213562373095048801688724209698079;

std::string fmt_g(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// ========================================================================
// Clifford closed forms.
// ========================================================================

double cl_D(double x) { return kSqrt2 - std::sin(x); }
double cl_p(double x) { return std::sin(x) / (2.0 * kSqrt2 * cl_D(x)); }
double cl_u(double x) { return 1.0 / cl_D(x); }
double cl_r(double x) {
    return std::pow(2.0, 0.25) * std::sin(kPi / 8.0 - x / 2.0) / cl_D(x);
}
double cl_s(double x) {
    return -std::pow(2.0, 0.25) * std::sin(3.0 * kPi / 8.0 - x / 2.0) /
           cl_D(x);
}

// ========================================================================
// Quartic bump detection.
// ========================================================================

struct Bump {
    double lo = 0.0;  // adjacent simple roots of Q bracketing Q > 0
    double hi = 0.0;
};

double bisect_root(const QuarticCoeffs& q, double a, double b) {
    double fa = q.eval(a);
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = q.eval(m);
        if ((fa <= 0.0) == (fm <= 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

Bump oscillation_bump(const QuarticCoeffs& q) {
    // All real roots satisfy 4 p^4 <= |c2| p^2 + |c1 p| + |c0|, so a crude
    // radius bound suffices for the scan.
    const double R =
        2.0 + 0.5 * (std::abs(q.c0) + std::abs(q.c1) + std::abs(q.c2));
    const int M = 16384;
    int best = -1;
    double best_q = 0.0;
    auto node = [&](int j) { return -R + 2.0 * R * j / (M - 1.0); };
    for (int j = 0; j < M; ++j) {
        const double val = q.eval(node(j));
        if (best < 0 || val > best_q) {
            best = j;
            best_q = val;
        }
    }
    if (!(best_q > 0.0))
        throw NoOscillation("stationary quartic is nowhere positive (max " +
                            fmt_g(best_q) + "): no real oscillation");
    double pstar = node(best);
    // Even quartic (c1 = 0) has mirror bumps; take the positive-p one.
    if (std::abs(q.c1) < 1e-14 && pstar < 0.0) pstar = -pstar;

    // Walk outward to sign changes, then bisect.
    double step = 2.0 * R / (M - 1.0);
    double a = pstar;
    while (q.eval(a) > 0.0) a -= step;
    double b = pstar;
    while (q.eval(b) > 0.0) b += step;
    Bump bump;
    bump.lo = bisect_root(q, a, a + step);
    bump.hi = bisect_root(q, b, b - step);
    if (std::abs(q.derivative(bump.lo)) < 1e-8 ||
        std::abs(q.derivative(bump.hi)) < 1e-8)
        throw TurningPointDegenerate(
            "turning point is (nearly) a double root: |Q'| = " +
            fmt_g(std::min(std::abs(q.derivative(bump.lo)),
                           std::abs(q.derivative(bump.hi)))) +
            ", the period diverges");
    return bump;
}

// Period by quadrature: with p = lo + (hi-lo) sin^2(theta) each traversal
// int dp/sqrt(Q) becomes 2 int_0^{pi/2} dtheta/sqrt(G) with the
// endpoint-regular G = Q/((p-lo)(hi-p)); the full cycle is twice that.
double period_quadrature(const QuarticCoeffs& q, const Bump& b) {
    const int M = 4096;
    const double span = b.hi - b.lo;
    double acc = 0.0, g_min = 1e300, g_max = 0.0;
    for (int j = 0; j < M; ++j) {
        const double th = (j + 0.5) * (kPi / 2.0) / M;
        const double sn = std::sin(th);
        const double p = b.lo + span * sn * sn;
        const double g = q.eval(p) / ((p - b.lo) * (b.hi - p));
        g_min = std::min(g_min, g);
        g_max = std::max(g_max, g);
        acc += 1.0 / std::sqrt(g);
    }
    // G = Q/((p-lo)(hi-p)) is bounded away from zero on a bump with simple
    // turning points; a near-zero interior value (within quadrature-grid
    // resolution of an interior zero of Q) means the bracket contains a
    // separatrix and the period diverges.
    if (!(g_min > 1e-6 * g_max))
        throw TurningPointDegenerate(
            "period quadrature: first integral touches zero inside the "
            "oscillation bump (separatrix, infinite period)");
    return 4.0 * acc * (kPi / 2.0) / M;
}

// ========================================================================
// Stationary integration (p, w = p_x).
// ========================================================================

struct PState {
    double p = 0.0;
    double w = 0.0;
};

PState rk4_step(const QuarticCoeffs& q, PState y, double h) {
    auto acc = [&](double p) { return 0.5 * q.derivative(p); };
    const double k1p = y.w, k1w = acc(y.p);
    const double k2p = y.w + 0.5 * h * k1w, k2w = acc(y.p + 0.5 * h * k1p);
    const double k3p = y.w + 0.5 * h * k2w, k3w = acc(y.p + 0.5 * h * k2p);
    const double k4p = y.w + h * k3w, k4w = acc(y.p + h * k3p);
    return {y.p + h / 6.0 * (k1p + 2.0 * (k2p + k3p) + k4p),
            y.w + h / 6.0 * (k1w + 2.0 * (k2w + k3w) + k4w)};
}

// ========================================================================
// Derivative stencils for the residual evaluators.
// ========================================================================

std::vector<double> differentiate(const PeriodicProfile& f, int order,
                                  DerivativeMode mode) {
    if (mode == DerivativeMode::Spectral)
        return spectral::derivative(f, order).samples;
    const int n = f.size();
    const double h = f.dx();
    std::vector<double> out(static_cast<std::size_t>(n));
    auto at = [&](int i) {
        return f.samples[static_cast<std::size_t>(((i % n) + n) % n)];
    };
    for (int i = 0; i < n; ++i) {
        double v = 0.0;
        switch (order) {
            case 1:
                v = (at(i + 1) - at(i - 1)) / (2.0 * h);
                break;
            case 2:
                v = (at(i + 1) - 2.0 * at(i) + at(i - 1)) / (h * h);
                break;
            case 3:
                v = (at(i + 2) - 2.0 * at(i + 1) + 2.0 * at(i - 1) -
                     at(i - 2)) /
                    (2.0 * h * h * h);
                break;
            default:
                throw DomainError("differentiate: central stencils cover "
                                  "orders 1-3");
        }
        out[static_cast<std::size_t>(i)] = v;
    }
    return out;
}

void require_same_grid(const PeriodicProfile& a, const PeriodicProfile& b,
                       const char* who) {
    if (a.size() != b.size() ||
        std::abs(a.period - b.period) > 1e-9 * (1.0 + std::abs(a.period)))
        throw DomainError(std::string(who) +
                          ": profiles must share one grid");
}

}  // namespace

// ========================================================================
// QuarticCoeffs.
// ========================================================================

QuarticCoeffs QuarticCoeffs::alpha_family(double alpha) {
    return {alpha, 0.0, 1.0};
}

QuarticCoeffs QuarticCoeffs::clifford() {
    return {1.0 / 16.0, 1.0 / kSqrt2, 2.0};
}

double QuarticCoeffs::eval(double p) const {
    return ((-4.0 * p * p + c2) * p + c1) * p + c0;
}

double QuarticCoeffs::derivative(double p) const {
    return (-16.0 * p * p + 2.0 * c2) * p + c1;
}

// ========================================================================
// Clifford fixture and immersion.
// ========================================================================

CliffordFixture clifford_fixture(int N) {
    if (N < 16 || N % 2 != 0)
        throw DomainError("clifford_fixture: need an even sample count >= 16");
    CliffordFixture fx;
    fx.p = sample_profile(N, 2.0 * kPi, cl_p);
    fx.u = sample_profile(N, 2.0 * kPi, cl_u);
    fx.r = sample_profile(N, 2.0 * kPi, cl_r);
    fx.s = sample_profile(N, 2.0 * kPi, cl_s);

    // (r, s) must solve the lambda = -1 spinor system with v = 4p:
    //   r_x = -r/2 + 2 p s,   s_x = -2 p r + s/2.
    // r and s are antiperiodic over one period of v.
    const auto rx = spectral::antiperiodic_derivative(fx.r.samples,
                                                      fx.r.period, 1);
    const auto sx = spectral::antiperiodic_derivative(fx.s.samples,
                                                      fx.s.period, 1);
    double res = 0.0, rs_res = 0.0;
    for (int i = 0; i < N; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        const double p = fx.p.samples[k], r = fx.r.samples[k],
                     s = fx.s.samples[k];
        res = std::max(res, std::abs(rx[k] - (-0.5 * r + 2.0 * p * s)));
        res = std::max(res, std::abs(sx[k] - (-2.0 * p * r + 0.5 * s)));
        const double D = cl_D(fx.p.x(i));
        rs_res = std::max(rs_res,
                          std::abs(r * s - (kSqrt2 * std::sin(fx.p.x(i)) -
                                            1.0) /
                                               (2.0 * D * D)));
    }
    if (res > 1e-10)
        throw Error("clifford_fixture: spinor system residual " + fmt_g(res));
    if (rs_res > 1e-12)
        throw Error("clifford_fixture: r*s closed-form residual " +
                    fmt_g(rs_res));
    return fx;
}

std::array<double, 3> clifford_immersion(double uu, double vv) {
    const double D = kSqrt2 - std::sin(vv);
    return {2.0 * std::cos(uu) / D, 2.0 * std::sin(uu) / D,
            2.0 * std::cos(vv) / D};
}

// ========================================================================
// Stationary profiles.
// ========================================================================

StationaryProfile stationary_profile(const QuarticCoeffs& coeffs, int N) {
    if (N < 16 || N % 2 != 0)
        throw DomainError(
            "stationary_profile: need an even sample count >= 16");
    const Bump bump = oscillation_bump(coeffs);
    const double t_quad = period_quadrature(coeffs, bump);

    // Event pass: from the upper turning point, p_x dips negative and
    // returns to zero at the lower turning point after half a period.
    const int oversample = 16;
    const double h_det = t_quad / (oversample * N);
    PState y{bump.hi, 0.0};
    double t_half = -1.0;
    for (int k = 0; k < 2 * oversample * N; ++k) {
        const PState next = rk4_step(coeffs, y, h_det);
        if (k > 0 && y.w < 0.0 && next.w >= 0.0) {
            // Bisect the crossing time within this step.
            double a = 0.0, b = h_det;
            for (int it = 0; it < 100 && b - a > 1e-15; ++it) {
                const double m = 0.5 * (a + b);
                (rk4_step(coeffs, y, m).w < 0.0 ? a : b) = m;
            }
            t_half = k * h_det + 0.5 * (a + b);
            break;
        }
        y = next;
    }
    if (t_half < 0.0)
        throw Error("stationary_profile: no turning-point return within two "
                    "estimated periods");
    const double T = 2.0 * t_half;
    if (std::abs(T - t_quad) > 1e-4 * t_quad)
        throw Error("stationary_profile: event period " + fmt_g(T) +
                    " disagrees with quadrature period " + fmt_g(t_quad));

    // Sampling pass at the detected period, monitoring the first integral.
    StationaryProfile out;
    out.coeffs = coeffs;
    out.p_min = bump.lo;
    out.p_max = bump.hi;
    out.branch = (bump.lo * bump.hi > 0.0) ? Branch::SignDefinite
                                           : Branch::SignChanging;
    if (std::abs(coeffs.c2 - 1.0) < 1e-14 && std::abs(coeffs.c1) < 1e-14)
        out.a_const = 0.0;

    const double h = T / (oversample * N);
    std::vector<double> samples(static_cast<std::size_t>(N));
    y = {bump.hi, 0.0};
    double drift = 0.0;
    for (int k = 0; k < oversample * N; ++k) {
        if (k % oversample == 0)
            samples[static_cast<std::size_t>(k / oversample)] = y.p;
        drift = std::max(drift,
                         std::abs(y.w * y.w - coeffs.eval(y.p)));
        y = rk4_step(coeffs, y, h);
    }
    drift = std::max(drift, std::abs(y.w * y.w - coeffs.eval(y.p)));
    if (drift > 1e-9)
        throw Error("stationary_profile: first-integral drift " +
                    fmt_g(drift) + " exceeds 1e-9");
    out.first_integral_drift = drift;
    out.p = make_profile(std::move(samples), T);
    return out;
}

// ========================================================================
// Residual evaluators.
// ========================================================================

EulerLagrangeReport euler_lagrange_residual(const PeriodicProfile& p,
                                            const PeriodicProfile& u,
                                            DerivativeMode mode) {
    require_same_grid(p, u, "euler_lagrange_residual");
    const int n = p.size();
    double umin = u.samples[0];
    for (double x : u.samples) umin = std::min(umin, x);
    if (!(umin > 0.0))
        throw DomainError("euler_lagrange_residual: conformal factor must "
                          "be positive (min " +
                          fmt_g(umin) + ")");

    const auto px = differentiate(p, 1, mode);
    const auto pxx = differentiate(p, 2, mode);
    const auto pxxx = differentiate(p, 3, mode);
    const auto ux = differentiate(u, 1, mode);
    const auto uxx = differentiate(u, 2, mode);

    EulerLagrangeReport rep;
    std::vector<double> a(static_cast<std::size_t>(n));
    double a_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        const double pi = p.samples[k], ui = u.samples[k];
        rep.res_el = std::max(
            rep.res_el, std::abs(pxx[k] * ui + pi * uxx[k] -
                                 2.0 * px[k] * ux[k] + 8.0 * ui * pi * pi *
                                                          pi));
        const double A = 8.0 * pi * pi * pi + pxx[k] - pi;
        a[k] = A / ui;
        a_sum += a[k];
        rep.res_combined = std::max(
            rep.res_combined,
            std::abs(A * ux[k] +
                     (px[k] - 24.0 * pi * pi * px[k] - pxxx[k]) * ui));
    }
    rep.a_const = a_sum / n;
    for (double ai : a)
        rep.a_var = std::max(rep.a_var, std::abs(ai - rep.a_const));
    return rep;
}

SchrodingerReport schrodinger_residual(const PeriodicProfile& p,
                                       const PeriodicProfile& u,
                                       double p_floor) {
    require_same_grid(p, u, "schrodinger_residual");
    if (!(p_floor > 0.0))
        throw DomainError("schrodinger_residual: p_floor must be positive");
    const int n = p.size();
    const double h = p.dx();
    auto idx = [&](int i) {
        return static_cast<std::size_t>(((i % n) + n) % n);
    };
    std::vector<char> mask(static_cast<std::size_t>(n));
    std::vector<double> xi(static_cast<std::size_t>(n), 0.0),
        lp(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        mask[k] = std::abs(p.samples[k]) > p_floor;
        if (mask[k]) {
            xi[k] = u.samples[k] / p.samples[k];
            lp[k] = std::log(std::abs(p.samples[k]));
        }
    }
    SchrodingerReport rep;
    rep.node_residual.assign(static_cast<std::size_t>(n), 0.0);
    rep.included.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        if (!(mask[idx(i - 1)] && mask[idx(i)] && mask[idx(i + 1)])) continue;
        const double xi_xx =
            (xi[idx(i + 1)] - 2.0 * xi[idx(i)] + xi[idx(i - 1)]) / (h * h);
        const double lp_xx =
            (lp[idx(i + 1)] - 2.0 * lp[idx(i)] + lp[idx(i - 1)]) / (h * h);
        const double pi = p.samples[idx(i)];
        const double res = std::abs(
            0.25 * xi_xx + (0.5 * lp_xx + 2.0 * pi * pi) * xi[idx(i)]);
        rep.node_residual[idx(i)] = res;
        rep.included[idx(i)] = 1;
        rep.residual = std::max(rep.residual, res);
        ++rep.included_nodes;
    }
    rep.excluded_fraction = 1.0 - static_cast<double>(rep.included_nodes) / n;
    if (rep.excluded_fraction > 0.20)
        throw DomainError("schrodinger_residual: " +
                          fmt_g(100.0 * rep.excluded_fraction) +
                          "% of nodes excluded by the |p| > " +
                          fmt_g(p_floor) + " floor");
    return rep;
}

// ========================================================================
// Periodic conformal factor from a Bloch spinor solution.
// ========================================================================

ConformalFactor periodic_conformal_factor(const PeriodicProfile& p,
                                          double lambda) {
    std::vector<double> v(p.samples.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 4.0 * p.samples[i];
    const PeriodicProfile vp = make_profile(std::move(v), p.period);

    const auto M = revolution::monodromy(vp, lambda);
    const auto c1 = revolution::integrate_spinor(vp, lambda, 1.0, 0.0);
    const auto c2 = revolution::integrate_spinor(vp, lambda, 0.0, 1.0);
    const double a = M.m[0][0], b = M.m[0][1], c = M.m[1][0], d = M.m[1][1];
    const double half_tr = 0.5 * M.trace();
    const int n = p.size();

    using cplx = std::complex<double>;
    auto bloch_abs2 = [&](cplx w0, cplx w1, std::vector<double>& out) {
        out.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const std::size_t k = static_cast<std::size_t>(i);
            const cplx r = c1.r[k] * w0 + c2.r[k] * w1;
            const cplx s = c1.s[k] * w0 + c2.s[k] * w1;
            out[k] = std::norm(r) + std::norm(s);
        }
    };
    // Eigenvector of the monodromy for eigenvalue mu, robust to zero
    // off-diagonal entries.
    auto eigenvector = [&](cplx mu, cplx& w0, cplx& w1) {
        if (std::abs(b) >= std::abs(c) && std::abs(b) > 1e-14) {
            w0 = b;
            w1 = mu - a;
        } else if (std::abs(c) > 1e-14) {
            w0 = mu - d;
            w1 = c;
        } else if (std::abs(mu - a) <= std::abs(mu - d)) {
            w0 = 1.0;
            w1 = 0.0;
        } else {
            w0 = 0.0;
            w1 = 1.0;
        }
    };

    std::vector<double> u;
    using MC = revolution::MonodromyClass;
    switch (M.classification) {
        case MC::EllipticRotation: {
            const cplx mu(half_tr, std::sqrt(std::max(
                                       0.0, 1.0 - half_tr * half_tr)));
            cplx w0, w1;
            eigenvector(mu, w0, w1);
            bloch_abs2(w0, w1, u);
            break;
        }
        case MC::Hyperbolic: {
            const double disc = std::sqrt(half_tr * half_tr - 1.0);
            cplx w0, w1;
            eigenvector(half_tr + disc, w0, w1);
            std::vector<double> up, um;
            bloch_abs2(w0, w1, up);
            eigenvector(half_tr - disc, w0, w1);
            bloch_abs2(w0, w1, um);
            u.resize(up.size());
            for (std::size_t i = 0; i < u.size(); ++i)
                u[i] = std::sqrt(up[i] * um[i]);
            break;
        }
        default: {  // identity, minus identity, parabolic: real eigenvector
            cplx w0, w1;
            eigenvector(half_tr > 0.0 ? 1.0 : -1.0, w0, w1);
            bloch_abs2(w0, w1, u);
            break;
        }
    }
    const double m = *std::max_element(u.begin(), u.end());
    for (double& x : u) x /= m;
    return {make_profile(std::move(u), p.period), M.classification};
}

// ========================================================================
// delta0 obstruction.
// ========================================================================

Delta0Report delta0(const StationaryProfile& profile,
                    const PeriodicProfile& u) {
    if (profile.branch != Branch::SignDefinite)
        throw BranchError("delta0: 1/p^3 is non-integrable through zeros of "
                          "p; sign-definite branch required");
    const PeriodicProfile& p = profile.p;
    require_same_grid(p, u, "delta0");
    const int n = p.size();

    const auto px = spectral::derivative(p, 1);
    const auto pxx = spectral::derivative(p, 2);
    const auto uxx = spectral::derivative(u, 2);
    const QuarticCoeffs& q = profile.coeffs;

    std::vector<double> f_direct(static_cast<std::size_t>(n)),
        f_parts(f_direct.size()), f_closed(f_direct.size());
    for (int i = 0; i < n; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        const double pi = p.samples[k], ui = u.samples[k];
        f_direct[k] = (ui - uxx.samples[k]) / pi;
        f_parts[k] =
            ui * (1.0 / pi + pxx.samples[k] / (pi * pi) -
                  2.0 * px.samples[k] * px.samples[k] / (pi * pi * pi));
        f_closed[k] = ui *
                      ((1.0 - q.c2) * pi * pi - 1.5 * q.c1 * pi - 2.0 * q.c0) /
                      (pi * pi * pi);
    }
    Delta0Report rep;
    rep.direct = integrate(make_profile(std::move(f_direct), p.period));
    rep.parts = integrate(make_profile(std::move(f_parts), p.period));
    rep.closed = integrate(make_profile(std::move(f_closed), p.period));
    return rep;
}

// ========================================================================
// Bound verdict and the coefficient case split.
// ========================================================================

BoundVerdict bound_verdict(double alpha, int N) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw DomainError("bound_verdict: alpha must be positive and finite");
    const elliptic::EnergyFamilyParams params(alpha);
    BoundVerdict out;
    out.alpha = alpha;
    out.beta = params.beta;
    out.ksq = params.k.ksq;
    out.W_elliptic = 16.0 * kPi * elliptic::energy_integral(params);

    const StationaryProfile prof =
        stationary_profile(QuarticCoeffs::alpha_family(alpha), N);
    std::vector<double> psq(prof.p.samples.size());
    for (std::size_t i = 0; i < psq.size(); ++i)
        psq[i] = prof.p.samples[i] * prof.p.samples[i];
    out.W_quadrature =
        8.0 * kPi * integrate(make_profile(std::move(psq), prof.p.period));
    out.period = prof.p.period;
    out.rel_diff = std::abs(out.W_elliptic - out.W_quadrature) /
                   out.W_elliptic;
    out.exceeds = out.W_elliptic > 2.0 * kPi * kPi;
    return out;
}

CaseSplitReport case_split_check() {
    // Two relations for (c1, c0) once c2 = 2 and d = c1/(2(c2-1)):
    //   f1 = c0 - (4 c1^2 - 1)/16 = 0
    //   f2 = c0 - c1 d / 4 = c0 - c1^2/8 = 0.
    double c1 = 1.0, c0 = 0.1;
    for (int it = 0; it < 60; ++it) {
        const double f1 = c0 - (4.0 * c1 * c1 - 1.0) / 16.0;
        const double f2 = c0 - c1 * c1 / 8.0;
        // Jacobian [[-c1/2, 1], [-c1/4, 1]], determinant -c1/4.
        const double det = -c1 / 4.0;
        const double dc1 = (f1 - f2) / det;
        const double dc0 = (c1 / 4.0 * f1 - c1 / 2.0 * f2) / det;
        c1 -= dc1;
        c0 -= dc0;
        if (std::abs(f1) + std::abs(f2) < 1e-16) break;
    }
    CaseSplitReport rep;
    rep.c2 = 2.0;
    rep.c1 = c1;
    rep.c0 = c0;
    rep.newton_res1 = std::abs(c0 - (4.0 * c1 * c1 - 1.0) / 16.0);
    rep.newton_res2 = std::abs(c0 - c1 * c1 / 8.0);
    const QuarticCoeffs cl = QuarticCoeffs::clifford();
    rep.fixture_diff = std::max({std::abs(rep.c2 - cl.c2),
                                 std::abs(rep.c1 - cl.c1),
                                 std::abs(rep.c0 - cl.c0)});
    // Forcing c2 = 0 makes d = -c1/2, so the second relation becomes
    // c0 + c1^2/8 = 0; at the solved coefficients its defect is 1/8.
    rep.residual_at_c2_zero = std::abs(c0 + c1 * c1 / 8.0);
    return rep;
}

}  // namespace wrs::willmore
