#pragma once

// Revolution reduction: spinor trajectories of the 1D linear system
//
//   r_x = (lambda/2) r + (v/2) s
//   s_x = -(v/2) r - (lambda/2) s
//
// with periodic potential v(x) and spectral parameter lambda (fixed to -1
// for geometry, where v = 4p).  A trajectory that closes after q potential
// periods induces a surface of revolution; the surface is a torus exactly
// when the closure integral int r s dx vanishes, otherwise the profile
// curve spirals along the axis (a cylinder-type surface).

#include <array>
#include <vector>

#include "wrs/mesh.hpp"
#include "wrs/profile.hpp"

namespace wrs::revolution {

using wrs::PeriodicProfile;

struct SpinorTrajectory {
    std::vector<double> r, s;  // samples on [0, periods*T), grid of v
    double lambda = -1.0;
    double closure_integral = 0.0;  // int r s dx over the stored range

    // Plumbing recorded at construction time.
    PeriodicProfile v;   // inducing potential (one period)
    int periods = 1;     // number of potential periods integrated
    double end_r = 0.0;  // solution at x = periods*T, for closure checks
    double end_s = 0.0;

    std::size_t size() const { return r.size(); }
    double total_length() const { return v.period * periods; }

    // Relative endpoint mismatch min(|end -+ start|)/|start|; the sign
    // ambiguity is allowed because (r,s) -> (-r,-s) leaves every quadratic
    // observable unchanged.
    double seam_defect() const;
};

enum class MonodromyClass {
    Identity,
    MinusIdentity,
    EllipticRotation,
    Hyperbolic,
    Parabolic,
};

struct Monodromy {
    std::array<std::array<double, 2>, 2> m{{{1.0, 0.0}, {0.0, 1.0}}};
    MonodromyClass classification = MonodromyClass::Identity;
    double angle = 0.0;  // rotation angle, valid for EllipticRotation

    double trace() const { return m[0][0] + m[1][1]; }
    double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
};

// Fixed-step classical 4th-order integration, 16 steps per grid interval,
// with v spectrally resampled to the step midpoints.  Samples (r, s) on the
// grid of v over `periods` copies of its period and records the closure
// integral by the periodic trapezoid rule with compensated summation.
// Throws BlowUpError if |r| or |s| exceeds 1e8.
SpinorTrajectory integrate_spinor(const PeriodicProfile& v, double lambda,
                                  double r0, double s0, int periods = 1);

// Transfer matrix over one period of v (columns are the images of the basis
// vectors), classified by its trace.
Monodromy monodromy(const PeriodicProfile& v, double lambda);

// Smallest q <= 16 with m^q = +-identity (entrywise within tol); 0 when the
// trajectory does not close at this resolution.
int closing_periods(const Monodromy& m, double tol = 1e-7);

enum class ClosureVerdict { Torus, Cylinder };

struct ClosureResult {
    ClosureVerdict verdict = ClosureVerdict::Torus;
    double closure_integral = 0.0;
    double pitch = 0.0;  // axial advance per trajectory period, -4 int r s
    double tol = 0.0;    // tolerance actually applied
};

// Torus iff |closure_integral| <= tol.  Passing tol <= 0 selects the default
// 1e-7 * total_length * max|rs|.  Throws NonPeriodicTrajectory when the
// trajectory fails to close (endpoint mismatch beyond integrator accuracy).
ClosureResult torus_closure_test(const SpinorTrajectory& traj,
                                 double tol = -1.0);

// Max-norm residual of the potential-metric identity
//   v * S = lambda^2 u - u_xx   with   S = -2 lambda r s,
//   S^2 = lambda^2 u^2 - u_x^2  (the signed square root),
// where u = r^2 + s^2.  Derivatives of u are spectral when the trajectory
// closes and interior 4th-order central differences otherwise.
double metric_identity_residual(const SpinorTrajectory& traj);

// Max-norm residuals of the three first-order identities along the flow:
//   u_x = lambda (r^2 - s^2)
//   (r^2 - s^2)_x = lambda u + 2 v r s
//   (r s)_x = -(v/2)(r^2 - s^2)
struct DerivativeIdentityResiduals {
    double d_u = 0.0;
    double d_diff = 0.0;
    double d_rs = 0.0;
};
DerivativeIdentityResiduals derivative_identity_residuals(
    const SpinorTrajectory& traj);

// W = 8 pi int p^2 dx over q periods; the equivalent form (pi/2) int v^2 dx
// with v = 4p is evaluated independently and must agree to 1e-12.
double willmore_energy(const PeriodicProfile& p, int q_periods = 1);

// Revolution mesh on (x, y) in [0, L) x [0, 2 pi): the profile leg at y = 0
// integrates the closed-form quadratures of (r, s); the axial coordinate is
// exactly y-independent; X1 + i X2 sweeps the circle of radius 2u(x) after
// re-centering by the vertex mean.  Per-vertex u, H = p/u, and K attached.
SurfaceMesh build_revolution_mesh(const SpinorTrajectory& traj, int ny = 64);

}  // namespace wrs::revolution
