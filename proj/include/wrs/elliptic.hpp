#pragma once

// Complete elliptic integrals, the bound function f(k), and the closed-form
// energy integral of the one-parameter torus family.
//
// F(k) and E(k) are computed by the arithmetic-geometric mean iteration,
// which converges quadratically and needs no tables.  The energy integral
// I(alpha) is available both in closed form (via F and E) and by direct
// quadrature of its defining integral; the two routes are independent and
// are cross-checked in the tests.

namespace wrs::elliptic {

// Modulus of an elliptic integral with k^2 cached alongside k.
struct EllipticModulus {
    double k = 0.0;
    double ksq = 0.0;

    static EllipticModulus from_k(double k);
    static EllipticModulus from_ksq(double ksq);
};

// Parameters of the energy family indexed by alpha >= 0:
//   beta = sqrt(1 + 16 alpha),  C = (1 + beta)/8,  k^2 = (1 + beta)/(2 beta).
// The constructor derives beta, C and k from alpha.
struct EnergyFamilyParams {
    double alpha = 0.0;
    double beta = 1.0;
    double C = 0.25;
    EllipticModulus k;

    explicit EnergyFamilyParams(double alpha);
};

struct CompleteElliptic {
    double F = 0.0;  // first kind
    double E = 0.0;  // second kind
};

// Complete integrals of the first and second kind at modulus k.
// F diverges logarithmically at k = 1 and is refused there.
CompleteElliptic complete_elliptic(const EllipticModulus& k);

// f(k) = [E(k) - (1-k^2) F(k)] / sqrt(2k^2 - 1) on 1/sqrt(2) < k <= 1,
// with the limit value f(1) = 1 taken exactly at k = 1.
double f_of_k(const EllipticModulus& k);

// Closed-form energy integral I(alpha); the Willmore energy of the family
// member is 16 pi I.  Requires alpha > 0.
double energy_integral(const EnergyFamilyParams& params);

// The same integral evaluated by quadrature of
//   I = int_0^C sqrt(C - v) dv / sqrt(v (beta - 4v)),
// with both endpoint singularities removed by v = C sin^2(theta).
double energy_integral_quadrature(const EnergyFamilyParams& params);

// Unique root of 2 E(k) = F(k) in (1/sqrt2, 1), located by bisection in k^2
// on [0.75, 0.95] to |dk^2| <= 1e-10.
EllipticModulus solve_two_E_equals_F();

// Residuals of the two Legendre derivative identities
//   E - (1-k^2) F = k (1-k^2) dF/dk
//   d/dk { k (1-k^2) dF/dk } = k F
// with all derivatives taken by central differences of step h.  Both decay
// as O(h^2).  The nested stencil requires k +- 2h inside (0,1).
struct LegendreResiduals {
    double res1 = 0.0;
    double res2 = 0.0;
};
LegendreResiduals legendre_derivative_residuals(const EllipticModulus& k,
                                                double h);

}  // namespace wrs::elliptic
