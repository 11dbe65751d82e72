#pragma once

// mKdV hierarchy engine: the recursion operator D = dxx + v^2 + v_x dinv v,
// its formal adjoint, the flows v_t = D^n v_x, the matrix generator that
// deforms spinor trajectories alongside the n = 1 flow, and conservation
// monitors for the Willmore energy and the closure integral.
//
// The formal antiderivative dinv is realized as the zero-mean periodic
// antiderivative behind a mean gate (a nonzero mean means the operand is not
// a total derivative).  The assembled flow and deformation matrices use the
// canonical polynomial antiderivatives (v^2/2, v_xx + v^3/2, v), whose
// constant parts are what make the flow agree with the closed form
// v_t = v_xxx + (3/2) v^2 v_x and keep the deformation exactly compatible
// with the spinor system; the gauge freedom is the additive constant.

#include <optional>
#include <vector>

#include "wrs/profile.hpp"

namespace wrs::mkdv {

using wrs::PeriodicProfile;

struct FlowState {
    PeriodicProfile v;
    double t = 0.0;
    int n = 1;  // hierarchy index; n = 1 is mKdV
};

// Sampled coefficient functions of the deformation matrix for given (v, n),
// all with the zero-mean antiderivative convention.  The constant top
// coefficient A_{2n+1} = 1 is implicit.  Only n = 1 is assembled; deeper
// generators are an extension point.
struct HierarchyCoeffs {
    std::vector<std::vector<double>> A_list;  // A_1, ..., A_{2n-1}
    std::vector<std::vector<double>> S_list;  // odd part of B, C
    std::vector<std::vector<double>> T_list;  // even part of B, -C
};
HierarchyCoeffs hierarchy_coeffs(const PeriodicProfile& v, int n);

// Unique zero-mean periodic antiderivative.  Requires |mean(f)| <=
// 1e-8 * max|f|; otherwise f is not a total derivative of a periodic
// function and NonExactDerivative is thrown.
PeriodicProfile antiderivative_periodic(const PeriodicProfile& f);

// D g = g_xx + v^2 g + v_x dinv(v g), zero-mean dinv behind the mean gate.
PeriodicProfile apply_D(const PeriodicProfile& v, const PeriodicProfile& g);

// D+ g = g_xx + v^2 g - v dinv(v_x g), formally coadjoint to D.
PeriodicProfile apply_D_adjoint(const PeriodicProfile& v,
                                const PeriodicProfile& g);

// D^n v_x with the canonical antiderivative constants, so that n = 1 equals
// v_xxx + (3/2) v^2 v_x exactly (self-checked to 1e-9).  Supported for
// n <= 3; the constant of the k-th application is the mean of the conserved
// density v * D^{k-1} v_x, known in closed form through k = 3.
PeriodicProfile mkdv_rhs(const PeriodicProfile& v, int n);

// Spinor pair rides along the n = 1 flow; the pair is stored on the grid of
// v and is antiperiodic over one period in the geometric situation.
struct SpinorState {
    std::vector<double> r, s;
    double lambda = -1.0;
    bool antiperiodic = true;
};

// Deformation generator at n = 1:
//   A = (v^2/2) lambda + lambda^3,
//   B = v_x lambda + (v_xx + v^3/2) + v lambda^2,
//   C = v_x lambda - (v_xx + v^3/2) - v lambda^2,
//   (dr, ds) = 1/2 (A r + B s, C r - A s).
void k3_apply(const PeriodicProfile& v, double lambda,
              const std::vector<double>& r, const std::vector<double>& s,
              std::vector<double>& dr, std::vector<double>& ds);

// Per-step conservation time series; closure_integral and dirac_residual
// are NaN when no spinor is co-evolved.
struct ConservationReport {
    std::vector<double> t, W, closure_integral, dirac_residual;
    bool has_spinor = false;
};

enum class TimeStepper {
    IntegratingFactor,  // exact dispersion, RK4 on the nonlinearity
    PlainExplicit,      // classical RK4 on the full right-hand side
};

struct EvolveResult {
    FlowState state;
    std::optional<SpinorState> spinor;
    ConservationReport report;
};

// Advance `steps` steps of size dt.  A spinor may be co-evolved for n = 1;
// its stages use the potential's stage values, keeping the coupled scheme
// 4th order.  Aborts with InstabilityError when max|v| exceeds 10x its
// initial value (or turns non-finite).
EvolveResult evolve(const FlowState& state, double dt, int steps,
                    const std::optional<SpinorState>& spinor = std::nullopt,
                    TimeStepper mode = TimeStepper::IntegratingFactor);

// Step-size heuristic: the integrating factor removes the dispersive
// stiffness, leaving the nonlinear advection CFL; the plain explicit mode
// must resolve the k_max^{2n+1} dispersion itself.
double stable_dt(const PeriodicProfile& v, int n = 1,
                 TimeStepper mode = TimeStepper::IntegratingFactor);

// J_k = int (D^k v_x)(r^2 + s^2) dx for k = 0..kmax (kmax <= 3), plus the
// recursion defects |J_k - lambda^2 J_{k-1}| at lambda = -1.  All vanish
// when (r, s) solves the spinor system for v.
struct JkReport {
    std::vector<double> J;
    std::vector<double> recursion_defect;
};
JkReport jk_functionals(const PeriodicProfile& v, const PeriodicProfile& r,
                        const PeriodicProfile& s, int kmax);

}  // namespace wrs::mkdv
