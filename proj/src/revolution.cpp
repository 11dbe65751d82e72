#include "wrs/revolution.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "wrs/errors.hpp"
#include "wrs/simd.hpp"
#include "wrs/spectral.hpp"

namespace wrs::revolution {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBlowUpLimit = 1e8;
// Endpoint mismatch (relative) beyond which a trajectory is not considered
// closed; integrator error for smooth profiles sits orders of magnitude
// below this.
constexpr double kSeamTol = 1e-6;

struct State {
    double r, s;
};

inline State rhs(double lambda, double v, const State& y) {
    return State{0.5 * (lambda * y.r + v * y.s),
                 0.5 * (-v * y.r - lambda * y.s)};
}

// Tile one period of the potential across the stored trajectory range.
std::vector<double> tile(const std::vector<double>& v, int periods) {
    std::vector<double> out;
    out.reserve(v.size() * static_cast<std::size_t>(periods));
    for (int q = 0; q < periods; ++q) out.insert(out.end(), v.begin(), v.end());
    return out;
}

// First and second derivative of f over [0, length): spectral when f is
// periodic over the stored range, otherwise interior 4th-order central
// differences with the two points nearest each end excluded.
struct DerivPair {
    std::vector<double> d1, d2;
    std::size_t lo = 0, hi = 0;  // valid index range [lo, hi)
};

DerivPair differentiate(const std::vector<double>& f, double length,
                        bool periodic) {
    const std::size_t n = f.size();
    DerivPair out;
    if (periodic) {
        out.d1 = spectral::derivative(f, length, 1);
        out.d2 = spectral::derivative(f, length, 2);
        out.lo = 0;
        out.hi = n;
        return out;
    }
    if (n < 5) throw GridTooSmall("revolution: too few samples to differentiate");
    const double h = length / static_cast<double>(n);
    out.d1.assign(n, 0.0);
    out.d2.assign(n, 0.0);
    for (std::size_t i = 2; i + 2 < n; ++i) {
        out.d1[i] = (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) /
                    (12.0 * h);
        out.d2[i] = (-f[i + 2] + 16.0 * f[i + 1] - 30.0 * f[i] +
                     16.0 * f[i - 1] - f[i - 2]) /
                    (12.0 * h * h);
    }
    out.lo = 2;
    out.hi = n - 2;
    return out;
}

// u = r^2 + s^2 closes over the stored range whenever (r, s) closes up to
// sign, which is exactly the condition under which spectral differentiation
// of the quadratic observables is legitimate.
bool quadratics_periodic(const SpinorTrajectory& t) {
    const double u0 = t.r[0] * t.r[0] + t.s[0] * t.s[0];
    const double u1 = t.end_r * t.end_r + t.end_s * t.end_s;
    return std::abs(u1 - u0) <= 1e-6 * std::max(u0, u1);
}

}  // namespace

double SpinorTrajectory::seam_defect() const {
    const double n0 = std::hypot(r[0], s[0]);
    const double n1 = std::hypot(end_r, end_s);
    const double dm = std::hypot(end_r - r[0], end_s - s[0]);
    const double dp = std::hypot(end_r + r[0], end_s + s[0]);
    return std::min(dm, dp) / std::max(n0, n1);
}

SpinorTrajectory integrate_spinor(const PeriodicProfile& v, double lambda,
                                  double r0, double s0, int periods) {
    if (r0 == 0.0 && s0 == 0.0)
        throw DomainError("revolution: zero initial spinor");
    if (periods < 1 || periods > 64)
        throw DomainError("revolution: periods must be in [1, 64]");
    const std::size_t n = v.size();
    const double T = v.period;

    // 16 integration steps per grid interval; the stage points at half-steps
    // live on a 32x spectrally resampled copy of the potential.  This puts
    // the trajectory error near 1e-13, small enough that spectral second
    // derivatives of u = r^2 + s^2 stay below 1e-8.
    const std::size_t fine_n = 32 * n;
    const std::vector<double> vf = spectral::resample(v.samples, fine_n);
    const double h = T / (16.0 * static_cast<double>(n));

    SpinorTrajectory out;
    out.lambda = lambda;
    out.v = v;
    out.periods = periods;
    const std::size_t total = n * static_cast<std::size_t>(periods);
    out.r.resize(total);
    out.s.resize(total);

    State y{r0, s0};
    const std::size_t steps = 16 * total;
    for (std::size_t k = 0; k < steps; ++k) {
        if (k % 16 == 0) {
            out.r[k / 16] = y.r;
            out.s[k / 16] = y.s;
        }
        const double v0 = vf[(2 * k) % fine_n];
        const double vm = vf[(2 * k + 1) % fine_n];
        const double v1 = vf[(2 * k + 2) % fine_n];
        const State k1 = rhs(lambda, v0, y);
        const State k2 =
            rhs(lambda, vm, {y.r + 0.5 * h * k1.r, y.s + 0.5 * h * k1.s});
        const State k3 =
            rhs(lambda, vm, {y.r + 0.5 * h * k2.r, y.s + 0.5 * h * k2.s});
        const State k4 = rhs(lambda, v1, {y.r + h * k3.r, y.s + h * k3.s});
        y.r += h / 6.0 * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r);
        y.s += h / 6.0 * (k1.s + 2.0 * k2.s + 2.0 * k3.s + k4.s);
        if (std::abs(y.r) > kBlowUpLimit || std::abs(y.s) > kBlowUpLimit)
            throw BlowUpError("revolution: spinor grew past 1e8");
    }
    out.end_r = y.r;
    out.end_s = y.s;
    out.closure_integral = (T / static_cast<double>(n)) *
                           simd::dot(out.r.data(), out.s.data(), total);
    return out;
}

Monodromy monodromy(const PeriodicProfile& v, double lambda) {
    const SpinorTrajectory c1 = integrate_spinor(v, lambda, 1.0, 0.0, 1);
    const SpinorTrajectory c2 = integrate_spinor(v, lambda, 0.0, 1.0, 1);
    Monodromy out;
    out.m = {{{c1.end_r, c2.end_r}, {c1.end_s, c2.end_s}}};

    const double tr = out.trace();
    const double dev_id = std::max(
        std::max(std::abs(out.m[0][0] - 1.0), std::abs(out.m[1][1] - 1.0)),
        std::max(std::abs(out.m[0][1]), std::abs(out.m[1][0])));
    const double dev_mid = std::max(
        std::max(std::abs(out.m[0][0] + 1.0), std::abs(out.m[1][1] + 1.0)),
        std::max(std::abs(out.m[0][1]), std::abs(out.m[1][0])));

    constexpr double kTraceTol = 1e-9;
    constexpr double kMatrixTol = 1e-7;
    if (std::abs(tr - 2.0) <= kTraceTol) {
        out.classification = dev_id <= kMatrixTol ? MonodromyClass::Identity
                                                  : MonodromyClass::Parabolic;
    } else if (std::abs(tr + 2.0) <= kTraceTol) {
        out.classification = dev_mid <= kMatrixTol
                                 ? MonodromyClass::MinusIdentity
                                 : MonodromyClass::Parabolic;
    } else if (std::abs(tr) < 2.0) {
        out.classification = MonodromyClass::EllipticRotation;
        out.angle = std::acos(0.5 * tr);
    } else {
        out.classification = MonodromyClass::Hyperbolic;
    }
    return out;
}

int closing_periods(const Monodromy& mono, double tol) {
    std::array<std::array<double, 2>, 2> mk = mono.m;
    for (int q = 1; q <= 16; ++q) {
        const double dev_id = std::max(
            std::max(std::abs(mk[0][0] - 1.0), std::abs(mk[1][1] - 1.0)),
            std::max(std::abs(mk[0][1]), std::abs(mk[1][0])));
        const double dev_mid = std::max(
            std::max(std::abs(mk[0][0] + 1.0), std::abs(mk[1][1] + 1.0)),
            std::max(std::abs(mk[0][1]), std::abs(mk[1][0])));
        if (std::min(dev_id, dev_mid) <= tol) return q;
        const std::array<std::array<double, 2>, 2> next = {
            {{mk[0][0] * mono.m[0][0] + mk[0][1] * mono.m[1][0],
              mk[0][0] * mono.m[0][1] + mk[0][1] * mono.m[1][1]},
             {mk[1][0] * mono.m[0][0] + mk[1][1] * mono.m[1][0],
              mk[1][0] * mono.m[0][1] + mk[1][1] * mono.m[1][1]}}};
        mk = next;
    }
    return 0;
}

ClosureResult torus_closure_test(const SpinorTrajectory& traj, double tol) {
    if (traj.seam_defect() > kSeamTol)
        throw NonPeriodicTrajectory(
            "revolution: trajectory does not close over its stored periods");
    const std::vector<double> rs = simd::mul(traj.r, traj.s);
    const double max_rs = simd::max_abs(rs);
    ClosureResult out;
    out.closure_integral = traj.closure_integral;
    out.pitch = -4.0 * traj.closure_integral;
    out.tol = tol > 0.0 ? tol
                        : std::max(1e-7 * traj.total_length() * max_rs, 1e-300);
    out.verdict = std::abs(traj.closure_integral) <= out.tol
                      ? ClosureVerdict::Torus
                      : ClosureVerdict::Cylinder;
    return out;
}

double metric_identity_residual(const SpinorTrajectory& traj) {
    const std::size_t n = traj.size();
    const double L = traj.total_length();
    const double lambda = traj.lambda;
    const std::vector<double> vt = tile(traj.v.samples, traj.periods);

    std::vector<double> u(n), rs(n);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = traj.r[i] * traj.r[i] + traj.s[i] * traj.s[i];
        rs[i] = traj.r[i] * traj.s[i];
    }
    const DerivPair d = differentiate(u, L, quadratics_periodic(traj));

    const double umax = simd::max_abs(u);
    double smax = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        smax = std::max(smax, std::abs(-2.0 * lambda * rs[i]));

    double res = 0.0;
    const double l2 = lambda * lambda;
    for (std::size_t i = d.lo; i < d.hi; ++i) {
        const double S = -2.0 * lambda * rs[i];  // signed root
        const double lhs = l2 * u[i] - d.d2[i];
        res = std::max(res, std::abs(vt[i] * S - lhs));
        const double root_arg = l2 * u[i] * u[i] - d.d1[i] * d.d1[i];
        if (root_arg < -1e-8 * l2 * umax * umax)
            throw DomainError("revolution: metric root argument negative");
        res = std::max(res,
                       std::abs(S * S - root_arg) / (1.0 + 2.0 * smax));
    }
    return res;
}

DerivativeIdentityResiduals derivative_identity_residuals(
    const SpinorTrajectory& traj) {
    const std::size_t n = traj.size();
    const double L = traj.total_length();
    const double lambda = traj.lambda;
    const std::vector<double> vt = tile(traj.v.samples, traj.periods);

    std::vector<double> u(n), diff(n), rs(n);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = traj.r[i] * traj.r[i] + traj.s[i] * traj.s[i];
        diff[i] = traj.r[i] * traj.r[i] - traj.s[i] * traj.s[i];
        rs[i] = traj.r[i] * traj.s[i];
    }
    const bool periodic = quadratics_periodic(traj);
    const DerivPair du = differentiate(u, L, periodic);
    const DerivPair dd = differentiate(diff, L, periodic);
    const DerivPair drs = differentiate(rs, L, periodic);

    DerivativeIdentityResiduals out;
    for (std::size_t i = du.lo; i < du.hi; ++i) {
        out.d_u = std::max(out.d_u, std::abs(du.d1[i] - lambda * diff[i]));
        out.d_diff = std::max(
            out.d_diff,
            std::abs(dd.d1[i] - (lambda * u[i] + 2.0 * vt[i] * rs[i])));
        out.d_rs = std::max(out.d_rs,
                            std::abs(drs.d1[i] + 0.5 * vt[i] * diff[i]));
    }
    return out;
}

double willmore_energy(const PeriodicProfile& p, int q_periods) {
    if (q_periods < 1)
        throw DomainError("revolution: q_periods must be positive");
    const double h = p.dx();
    const double q = static_cast<double>(q_periods);
    const double base_p = h * simd::sum_squares(p.samples);
    const std::vector<double> v = simd::scale(p.samples, 4.0);
    const double base_v = h * simd::sum_squares(v);
    const double wp = (8.0 * kPi) * (q * base_p);
    const double wv = (0.5 * kPi) * (q * base_v);
    if (std::abs(wp - wv) > 1e-12 * std::max(1.0, std::abs(wp)))
        throw Error("revolution: energy quadrature routes disagree");
    return wp;
}

SurfaceMesh build_revolution_mesh(const SpinorTrajectory& traj, int ny) {
    if (ny < 8) throw GridTooSmall("revolution: mesh needs ny >= 8");
    if (traj.seam_defect() > kSeamTol)
        throw NonPeriodicTrajectory(
            "revolution: cannot mesh a non-closing trajectory");

    const std::size_t nx = traj.size();
    const double L = traj.total_length();
    const double hx = L / static_cast<double>(nx);
    const double hy = 2.0 * kPi / static_cast<double>(ny);
    const std::vector<double> vt = tile(traj.v.samples, traj.periods);

    std::vector<double> u(nx), p(nx);
    for (std::size_t i = 0; i < nx; ++i) {
        u[i] = traj.r[i] * traj.r[i] + traj.s[i] * traj.s[i];
        p[i] = 0.25 * vt[i];
    }
    if (simd::max_abs(u) == 0.0)
        throw DegenerateImmersion("revolution: vanishing conformal factor");

    // Gaussian curvature K = -(log u)_xx / (4 u^2) for the revolution
    // ansatz where u depends on x alone.
    std::vector<double> logu(nx);
    for (std::size_t i = 0; i < nx; ++i) logu[i] = std::log(u[i]);
    const std::vector<double> logu_xx = spectral::derivative(logu, L, 2);

    // Leg along x at y = 0: the quadrature integrands reduce to
    //   d(X1 + iX2)/dx = 2i (r^2 - s^2),   dX3/dx = -4 r s,
    // both periodic; cumulative trapezoid along the profile.
    std::vector<double> ax(nx, 0.0);  // imaginary part of X1 + iX2 at y=0
    std::vector<double> x3(nx, 0.0);
    for (std::size_t i = 1; i < nx; ++i) {
        const double fi = 2.0 * (traj.r[i] * traj.r[i] - traj.s[i] * traj.s[i]);
        const double fim = 2.0 * (traj.r[i - 1] * traj.r[i - 1] -
                                  traj.s[i - 1] * traj.s[i - 1]);
        ax[i] = ax[i - 1] + 0.5 * hx * (fi + fim);
        x3[i] = x3[i - 1] -
                0.5 * hx *
                    (4.0 * traj.r[i] * traj.s[i] +
                     4.0 * traj.r[i - 1] * traj.s[i - 1]);
    }

    // Leg along y: d(X1 + iX2)/dy = -2 u(x) e^{-iy}, dX3/dy = 0 exactly.
    // The x-independent cumulative factor c_j is shared by every row.
    std::vector<std::complex<double>> c(static_cast<std::size_t>(ny), 0.0);
    for (int j = 1; j < ny; ++j) {
        const std::complex<double> em =
            std::exp(std::complex<double>(0.0, -hy * (j - 1)));
        const std::complex<double> ej =
            std::exp(std::complex<double>(0.0, -hy * j));
        c[static_cast<std::size_t>(j)] =
            c[static_cast<std::size_t>(j - 1)] + 0.5 * hy * (em + ej);
    }

    SurfaceMesh mesh;
    mesh.nx = static_cast<int>(nx);
    mesh.ny = ny;
    mesh.period_x = L;
    mesh.period_y = 2.0 * kPi;
    const std::size_t nv = nx * static_cast<std::size_t>(ny);
    mesh.X1.resize(nv);
    mesh.X2.resize(nv);
    mesh.X3.resize(nv);
    mesh.u.resize(nv);
    mesh.H.resize(nv);
    mesh.K.resize(nv);

    for (std::size_t i = 0; i < nx; ++i) {
        const double Ki = -logu_xx[i] / (4.0 * u[i] * u[i]);
        const double Hi = p[i] / u[i];
        for (int j = 0; j < ny; ++j) {
            const std::complex<double> a =
                std::complex<double>(0.0, ax[i]) -
                2.0 * u[i] * c[static_cast<std::size_t>(j)];
            const std::size_t id = mesh.index(static_cast<int>(i), j);
            mesh.X1[id] = a.real();
            mesh.X2[id] = a.imag();
            mesh.X3[id] = x3[i];
            mesh.u[id] = u[i];
            mesh.H[id] = Hi;
            mesh.K[id] = Ki;
        }
    }

    // Re-center so the revolution axis passes through the origin: the mean
    // of e^{-iy} over the full circle vanishes, so subtracting the vertex
    // mean removes the arbitrary base point of the quadrature.
    const double nvd = static_cast<double>(nv);
    const double m1 = simd::sum(mesh.X1) / nvd;
    const double m2 = simd::sum(mesh.X2) / nvd;
    const double m3 = simd::sum(mesh.X3) / nvd;
    for (std::size_t k = 0; k < nv; ++k) {
        mesh.X1[k] -= m1;
        mesh.X2[k] -= m2;
        mesh.X3[k] -= m3;
    }
    return mesh;
}

}  // namespace wrs::revolution
