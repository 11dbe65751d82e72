#pragma once

// 2D verification layer for the generalized Weierstrass inducing: given a
// spinor pair and a real potential sampled on a rectangle, check the Dirac
// system, check closedness of the inducing one-forms, integrate them to a
// surface patch, extract the induced geometry, and convert to and from the
// Kenmotsu pair (f, phi).
//
// The module consumes analytically known solution families (minimal p = 0
// fixtures and the revolution ansatz psi = (r(x), s(x)) e^{iy/2}); it does
// not solve the 2D Dirac system for arbitrary p.

#include <complex>
#include <cstddef>
#include <vector>

namespace wrs::weierstrass {

using Complex = std::complex<double>;

// Uniform rectangle [x0, x1] x [y0, y1] with endpoint-inclusive sampling:
// hx = (x1 - x0)/(nx - 1).  No periodicity is assumed; derivative stencils
// are central inside and one-sided second-order on the boundary.  Storage
// matches SurfaceMesh: index(i, j) = i*ny + j with i the x index.
struct Grid2D {
    double x0 = 0.0, x1 = 1.0;
    double y0 = 0.0, y1 = 1.0;
    int nx = 0, ny = 0;

    double hx() const { return (x1 - x0) / (nx - 1); }
    double hy() const { return (y1 - y0) / (ny - 1); }
    double x(int i) const { return x0 + i * hx(); }
    double y(int j) const { return y0 + j * hy(); }
    std::size_t size() const {
        return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    }
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(ny) +
               static_cast<std::size_t>(j);
    }
};

Grid2D make_grid(double x0, double x1, double y0, double y1, int nx, int ny);

// A candidate solution of the Dirac system psi1_z = p psi2,
// psi2_zbar = -p psi1 with real potential p, sampled on the grid.
struct SpinorField2D {
    Grid2D grid;
    std::vector<Complex> psi1, psi2;
    std::vector<double> p;
};

// Samples a field from closed forms: f1, f2 map (x, y) to complex spinor
// components, fp maps (x, y) to the real potential.
template <class F1, class F2, class FP>
SpinorField2D sample_field(const Grid2D& g, F1&& f1, F2&& f2, FP&& fp) {
    SpinorField2D field;
    field.grid = g;
    field.psi1.resize(g.size());
    field.psi2.resize(g.size());
    field.p.resize(g.size());
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const std::size_t k = g.index(i, j);
            field.psi1[k] = f1(g.x(i), g.y(j));
            field.psi2[k] = f2(g.x(i), g.y(j));
            field.p[k] = fp(g.x(i), g.y(j));
        }
    return field;
}

// psi1 = 1, psi2 = z, p = 0 on [-1, 1]^2: an exact minimal-surface datum
// (holomorphic psi2, constant psi1).
SpinorField2D minimal_fixture(int nx, int ny);

// Revolution ansatz sampled from the closed-form Clifford torus data:
// psi1 = r(x) e^{iy/2}, psi2 = s(x) e^{iy/2}, p = sin x/(2 sqrt2 D) with
// D = sqrt2 - sin x.  The x-chart is configurable so Kenmotsu conversions
// can avoid the zero of s at x = 3 pi/4; y always spans [0, 2 pi].
SpinorField2D clifford_field(int nx, int ny, double chart_x0 = 0.0,
                             double chart_x1 = 6.283185307179586476925287);

// Discrete Wirtinger derivatives dz = (dx - i dy)/2, dzbar = (dx + i dy)/2
// on the grid (second-order central stencils, one-sided at the boundary).
std::vector<Complex> dz(const Grid2D& g, const std::vector<Complex>& f);
std::vector<Complex> dzbar(const Grid2D& g, const std::vector<Complex>& f);

// Max-norm over interior nodes of |psi1_z - p psi2| and |psi2_zbar + p psi1|.
// O(h^2) for fields sampled from exact solutions, O(1/h) for noise.
// Throws GridTooSmall when nx or ny < 5.
double dirac_residual(const SpinorField2D& field);

// Max-norm over interior nodes of the three closedness combinations of the
// inducing forms,
//   dzbar(conj(psi1)^2) + dz(conj(psi2)^2),
//   dzbar(psi2^2)       + dz(psi1^2),
//   dzbar(psi2 conj(psi1)) - dz(psi1 conj(psi2)),
// which cancel algebraically on exact solutions, leaving pure O(h^2)
// discretization error.  Throws GridTooSmall when nx or ny < 5.
double closedness_residual(const SpinorField2D& field);

// Integrated surface patch.  X is produced by integrate_patch; u, H, K and
// metric_check are filled by induced_geometry.
struct SurfacePatch {
    Grid2D grid;
    std::vector<double> X1, X2, X3;
    std::vector<double> u, H, K;
    double path_independence_defect = 0.0;
    double metric_check = 0.0;  // relative first-fundamental-form deviation
};

// Composite-trapezoid line integration of the inducing forms along the
// axis-aligned two-leg path basepoint -> (i, j0) -> (i, j); the transposed
// (column-first) path is integrated as well and the maximum coordinate
// discrepancy reported as path_independence_defect.  Fields whose Dirac
// residual exceeds dirac_tol are rejected (NonExactDerivative): the forms
// are only closed on solutions.
SurfacePatch integrate_patch(const SpinorField2D& field, int i0, int j0,
                             double dirac_tol = 5e-2);

// Fills u = |psi1|^2 + |psi2|^2, H = p/u, K = -(1/(4u^2)) Lap(log u) and
// cross-checks the first fundamental form of the integrated X against
// 4u^2 (dx^2 + dy^2) by finite differences (stored in metric_check as a
// relative deviation).  Throws DegenerateImmersion when u < 1e-10.
SurfacePatch induced_geometry(const SpinorField2D& field, SurfacePatch patch);

struct KenmotsuData {
    Grid2D grid;
    std::vector<Complex> f, phi;
    std::vector<double> p_recovered;
    // max |phi_zbar/phi + 2 conj(f) f_zbar/(1 + |f|^2)| over interior nodes
    double compat_residual = 0.0;
    // max |p_recovered - p| over interior nodes
    double p_roundtrip_residual = 0.0;
};

// Kenmotsu pair f = i conj(psi1)/psi2, phi = i psi2^2 with the potential
// recovered as p = -phi f_zbar/(|phi| (1 + |f|^2)), which is regular
// wherever psi2 != 0.  Throws ChartError when |psi2| <= psi2_floor
// anywhere on the grid.
KenmotsuData to_kenmotsu(const SpinorField2D& field,
                         double psi2_floor = 1e-8);

// Willmore energy by two quadratures (2D trapezoid, compensated sums):
// 4 iint p^2 dx dy, and iint H^2 dmu with dmu = 4 u^2 dx dy.
double willmore_from_p(const SpinorField2D& field);
double willmore_from_patch(const SurfacePatch& patch);

}  // namespace wrs::weierstrass
