#include "wrs/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "wrs/errors.hpp"

namespace wrs::weierstrass {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTau = 2.0 * std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Closed-form Clifford torus data: D = sqrt2 - sin x.
double cl_D(double x) { return kSqrt2 - std::sin(x); }
double cl_p(double x) { return std::sin(x) / (2.0 * kSqrt2 * cl_D(x)); }
double cl_r(double x) {
    return std::pow(2.0, 0.25) * std::sin(kPi / 8.0 - 0.5 * x) / cl_D(x);
}
double cl_s(double x) {
    return -std::pow(2.0, 0.25) * std::sin(3.0 * kPi / 8.0 - 0.5 * x) /
           cl_D(x);
}

// Compensated accumulator: integral quadratures and cumulative line
// integrals must not depend on any internal partitioning, so every sum is
// taken in a fixed order with Kahan correction.
struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

void require_stencil_grid(const Grid2D& g, const char* where) {
    if (g.nx < 5 || g.ny < 5)
        throw GridTooSmall(std::string(where) +
                           ": need nx, ny >= 5 for interior central stencils");
}

// Second-order partial derivatives on the endpoint-inclusive grid:
// central inside, one-sided three-point stencils on the boundary.
std::vector<Complex> partial_x(const Grid2D& g, const std::vector<Complex>& f) {
    std::vector<Complex> out(g.size());
    const double h = g.hx();
    for (int j = 0; j < g.ny; ++j) {
        out[g.index(0, j)] = (-3.0 * f[g.index(0, j)] +
                              4.0 * f[g.index(1, j)] - f[g.index(2, j)]) /
                             (2.0 * h);
        for (int i = 1; i < g.nx - 1; ++i)
            out[g.index(i, j)] =
                (f[g.index(i + 1, j)] - f[g.index(i - 1, j)]) / (2.0 * h);
        out[g.index(g.nx - 1, j)] =
            (3.0 * f[g.index(g.nx - 1, j)] - 4.0 * f[g.index(g.nx - 2, j)] +
             f[g.index(g.nx - 3, j)]) /
            (2.0 * h);
    }
    return out;
}

std::vector<Complex> partial_y(const Grid2D& g, const std::vector<Complex>& f) {
    std::vector<Complex> out(g.size());
    const double h = g.hy();
    for (int i = 0; i < g.nx; ++i) {
        out[g.index(i, 0)] = (-3.0 * f[g.index(i, 0)] +
                              4.0 * f[g.index(i, 1)] - f[g.index(i, 2)]) /
                             (2.0 * h);
        for (int j = 1; j < g.ny - 1; ++j)
            out[g.index(i, j)] =
                (f[g.index(i, j + 1)] - f[g.index(i, j - 1)]) / (2.0 * h);
        out[g.index(i, g.ny - 1)] =
            (3.0 * f[g.index(i, g.ny - 1)] - 4.0 * f[g.index(i, g.ny - 2)] +
             f[g.index(i, g.ny - 3)]) /
            (2.0 * h);
    }
    return out;
}

// Real second partials for the Laplacian of log u: central inside,
// one-sided four-point stencils (still O(h^2)) on the boundary.
std::vector<double> second_x(const Grid2D& g, const std::vector<double>& f) {
    std::vector<double> out(g.size());
    const double h2 = g.hx() * g.hx();
    for (int j = 0; j < g.ny; ++j) {
        out[g.index(0, j)] =
            (2.0 * f[g.index(0, j)] - 5.0 * f[g.index(1, j)] +
             4.0 * f[g.index(2, j)] - f[g.index(3, j)]) /
            h2;
        for (int i = 1; i < g.nx - 1; ++i)
            out[g.index(i, j)] = (f[g.index(i + 1, j)] -
                                  2.0 * f[g.index(i, j)] +
                                  f[g.index(i - 1, j)]) /
                                 h2;
        out[g.index(g.nx - 1, j)] =
            (2.0 * f[g.index(g.nx - 1, j)] - 5.0 * f[g.index(g.nx - 2, j)] +
             4.0 * f[g.index(g.nx - 3, j)] - f[g.index(g.nx - 4, j)]) /
            h2;
    }
    return out;
}

std::vector<double> second_y(const Grid2D& g, const std::vector<double>& f) {
    std::vector<double> out(g.size());
    const double h2 = g.hy() * g.hy();
    for (int i = 0; i < g.nx; ++i) {
        out[g.index(i, 0)] =
            (2.0 * f[g.index(i, 0)] - 5.0 * f[g.index(i, 1)] +
             4.0 * f[g.index(i, 2)] - f[g.index(i, 3)]) /
            h2;
        for (int j = 1; j < g.ny - 1; ++j)
            out[g.index(i, j)] = (f[g.index(i, j + 1)] -
                                  2.0 * f[g.index(i, j)] +
                                  f[g.index(i, j - 1)]) /
                                 h2;
        out[g.index(i, g.ny - 1)] =
            (2.0 * f[g.index(i, g.ny - 1)] - 5.0 * f[g.index(i, g.ny - 2)] +
             4.0 * f[g.index(i, g.ny - 3)] - f[g.index(i, g.ny - 4)]) /
            h2;
    }
    return out;
}

// Cumulative trapezoid of a per-node integrand along one grid row (vary i at
// fixed j, starting from i0) or one column; the accumulator is complex so a
// single pass serves both the X1 + iX2 form and the real X3 form.
void cumulative_row(const Grid2D& g, const std::vector<Complex>& f, int i0,
                    int j, std::vector<Complex>& out) {
    const double h = g.hx();
    out.assign(static_cast<std::size_t>(g.nx), Complex(0.0, 0.0));
    KahanSum re, im;
    for (int i = i0 + 1; i < g.nx; ++i) {
        const Complex inc =
            0.5 * h * (f[g.index(i - 1, j)] + f[g.index(i, j)]);
        re.add(inc.real());
        im.add(inc.imag());
        out[static_cast<std::size_t>(i)] = Complex(re.s, im.s);
    }
    re = KahanSum{};
    im = KahanSum{};
    for (int i = i0 - 1; i >= 0; --i) {
        const Complex inc =
            -0.5 * h * (f[g.index(i, j)] + f[g.index(i + 1, j)]);
        re.add(inc.real());
        im.add(inc.imag());
        out[static_cast<std::size_t>(i)] = Complex(re.s, im.s);
    }
}

void cumulative_col(const Grid2D& g, const std::vector<Complex>& f, int i,
                    int j0, std::vector<Complex>& out) {
    const double h = g.hy();
    out.assign(static_cast<std::size_t>(g.ny), Complex(0.0, 0.0));
    KahanSum re, im;
    for (int j = j0 + 1; j < g.ny; ++j) {
        const Complex inc =
            0.5 * h * (f[g.index(i, j - 1)] + f[g.index(i, j)]);
        re.add(inc.real());
        im.add(inc.imag());
        out[static_cast<std::size_t>(j)] = Complex(re.s, im.s);
    }
    re = KahanSum{};
    im = KahanSum{};
    for (int j = j0 - 1; j >= 0; --j) {
        const Complex inc =
            -0.5 * h * (f[g.index(i, j)] + f[g.index(i, j + 1)]);
        re.add(inc.real());
        im.add(inc.imag());
        out[static_cast<std::size_t>(j)] = Complex(re.s, im.s);
    }
}

// 2D composite trapezoid with compensated summation.
double trapezoid2d(const Grid2D& g, const std::vector<double>& f) {
    KahanSum acc;
    for (int i = 0; i < g.nx; ++i) {
        const double wx = (i == 0 || i == g.nx - 1) ? 0.5 : 1.0;
        for (int j = 0; j < g.ny; ++j) {
            const double wy = (j == 0 || j == g.ny - 1) ? 0.5 : 1.0;
            acc.add(wx * wy * f[g.index(i, j)]);
        }
    }
    return acc.s * g.hx() * g.hy();
}

}  // namespace

// ========================================================================
// Grids and fixtures.
// ========================================================================

Grid2D make_grid(double x0, double x1, double y0, double y1, int nx, int ny) {
    if (!(x1 > x0) || !(y1 > y0))
        throw DomainError("make_grid: need x1 > x0 and y1 > y0");
    if (nx < 3 || ny < 3)
        throw GridTooSmall("make_grid: need nx, ny >= 3");
    Grid2D g;
    g.x0 = x0;
    g.x1 = x1;
    g.y0 = y0;
    g.y1 = y1;
    g.nx = nx;
    g.ny = ny;
    return g;
}

SpinorField2D minimal_fixture(int nx, int ny) {
    const Grid2D g = make_grid(-1.0, 1.0, -1.0, 1.0, nx, ny);
    return sample_field(
        g, [](double, double) { return Complex(1.0, 0.0); },
        [](double x, double y) { return Complex(x, y); },
        [](double, double) { return 0.0; });
}

SpinorField2D clifford_field(int nx, int ny, double chart_x0,
                             double chart_x1) {
    const Grid2D g = make_grid(chart_x0, chart_x1, 0.0, kTau, nx, ny);
    return sample_field(
        g,
        [](double x, double y) {
            return cl_r(x) * std::polar(1.0, 0.5 * y);
        },
        [](double x, double y) {
            return cl_s(x) * std::polar(1.0, 0.5 * y);
        },
        [](double x, double) { return cl_p(x); });
}

// ========================================================================
// Wirtinger derivatives and equation residuals.
// ========================================================================

std::vector<Complex> dz(const Grid2D& g, const std::vector<Complex>& f) {
    const auto fx = partial_x(g, f);
    const auto fy = partial_y(g, f);
    std::vector<Complex> out(g.size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = 0.5 * (fx[k] - Complex(0.0, 1.0) * fy[k]);
    return out;
}

std::vector<Complex> dzbar(const Grid2D& g, const std::vector<Complex>& f) {
    const auto fx = partial_x(g, f);
    const auto fy = partial_y(g, f);
    std::vector<Complex> out(g.size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = 0.5 * (fx[k] + Complex(0.0, 1.0) * fy[k]);
    return out;
}

double dirac_residual(const SpinorField2D& field) {
    const Grid2D& g = field.grid;
    require_stencil_grid(g, "dirac_residual");
    const auto d1 = dz(g, field.psi1);
    const auto d2 = dzbar(g, field.psi2);
    double res = 0.0;
    for (int i = 1; i < g.nx - 1; ++i)
        for (int j = 1; j < g.ny - 1; ++j) {
            const std::size_t k = g.index(i, j);
            res = std::max(res, std::abs(d1[k] - field.p[k] * field.psi2[k]));
            res = std::max(res, std::abs(d2[k] + field.p[k] * field.psi1[k]));
        }
    return res;
}

double closedness_residual(const SpinorField2D& field) {
    const Grid2D& g = field.grid;
    require_stencil_grid(g, "closedness_residual");
    std::vector<Complex> a(g.size()), b(g.size()), c(g.size()), d(g.size()),
        e(g.size()), f(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        const Complex p1 = field.psi1[k], p2 = field.psi2[k];
        const Complex q1 = std::conj(p1), q2 = std::conj(p2);
        a[k] = q1 * q1;  // conj(psi1)^2   -> dzbar
        b[k] = q2 * q2;  // conj(psi2)^2   -> dz
        c[k] = p2 * p2;  // psi2^2         -> dzbar
        d[k] = p1 * p1;  // psi1^2         -> dz
        e[k] = p2 * q1;  // psi2 conj(psi1) -> dzbar
        f[k] = p1 * q2;  // psi1 conj(psi2) -> dz
    }
    const auto azb = dzbar(g, a);
    const auto bz = dz(g, b);
    const auto czb = dzbar(g, c);
    const auto dzv = dz(g, d);
    const auto ezb = dzbar(g, e);
    const auto fz = dz(g, f);
    double res = 0.0;
    for (int i = 1; i < g.nx - 1; ++i)
        for (int j = 1; j < g.ny - 1; ++j) {
            const std::size_t k = g.index(i, j);
            res = std::max(res, std::abs(azb[k] + bz[k]));
            res = std::max(res, std::abs(czb[k] + dzv[k]));
            res = std::max(res, std::abs(ezb[k] - fz[k]));
        }
    return res;
}

// ========================================================================
// Patch integration and induced geometry.
// ========================================================================

SurfacePatch integrate_patch(const SpinorField2D& field, int i0, int j0,
                             double dirac_tol) {
    const Grid2D& g = field.grid;
    require_stencil_grid(g, "integrate_patch");
    if (i0 < 0 || i0 >= g.nx || j0 < 0 || j0 >= g.ny)
        throw DomainError("integrate_patch: basepoint outside the grid");
    const double gate = dirac_residual(field);
    if (gate > dirac_tol)
        throw NonExactDerivative(
            "integrate_patch: Dirac residual " + fmt_g(gate) +
            " exceeds the gate " + fmt_g(dirac_tol) +
            "; the inducing forms are only closed on solutions");

    // Per-node integrands of the two inducing forms along grid directions.
    // For W = X1 + iX2 = 2i int (conj(psi1)^2 dz' - conj(psi2)^2 dzbar'):
    // along x (dz = dzbar = dx)  2i (conj(psi1)^2 - conj(psi2)^2),
    // along y (dz = -dzbar = i dy)  -2 (conj(psi1)^2 + conj(psi2)^2).
    // For X3 = -2 int (psi2 conj(psi1) dz' + psi1 conj(psi2) dzbar'):
    // along x  -4 Re(psi2 conj(psi1)), along y  4 Im(psi2 conj(psi1)).
    // Packing X3's integrand into the imaginary slot of a second complex
    // field lets both forms share the cumulative-trapezoid passes.
    std::vector<Complex> fw_x(g.size()), fw_y(g.size()), f3(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        const Complex q1 = std::conj(field.psi1[k]);
        const Complex q2 = std::conj(field.psi2[k]);
        const Complex e = field.psi2[k] * q1;
        fw_x[k] = Complex(0.0, 2.0) * (q1 * q1 - q2 * q2);
        fw_y[k] = -2.0 * (q1 * q1 + q2 * q2);
        f3[k] = Complex(-4.0 * e.real(), 4.0 * e.imag());
    }

    SurfacePatch patch;
    patch.grid = g;
    patch.X1.resize(g.size());
    patch.X2.resize(g.size());
    patch.X3.resize(g.size());

    // Row-first path: base row j0, then up/down each column.
    std::vector<Complex> row_w, row_3, col_w, col_3;
    cumulative_row(g, fw_x, i0, j0, row_w);
    cumulative_row(g, f3, i0, j0, row_3);
    std::vector<Complex> Wrow(g.size()), X3row(g.size());
    for (int i = 0; i < g.nx; ++i) {
        cumulative_col(g, fw_y, i, j0, col_w);
        cumulative_col(g, f3, i, j0, col_3);
        for (int j = 0; j < g.ny; ++j) {
            const std::size_t k = g.index(i, j);
            Wrow[k] = row_w[static_cast<std::size_t>(i)] +
                      col_w[static_cast<std::size_t>(j)];
            X3row[k] = Complex(0.0, row_3[static_cast<std::size_t>(i)].real()) +
                       Complex(0.0, col_3[static_cast<std::size_t>(j)].imag());
        }
    }

    // Column-first (transposed) path: base column i0, then along each row.
    cumulative_col(g, fw_y, i0, j0, col_w);
    cumulative_col(g, f3, i0, j0, col_3);
    double defect = 0.0;
    std::vector<Complex> row_w2, row_32;
    for (int j = 0; j < g.ny; ++j) {
        cumulative_row(g, fw_x, i0, j, row_w2);
        cumulative_row(g, f3, i0, j, row_32);
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t k = g.index(i, j);
            const Complex Wcol = col_w[static_cast<std::size_t>(j)] +
                                 row_w2[static_cast<std::size_t>(i)];
            const double X3col = col_3[static_cast<std::size_t>(j)].imag() +
                                 row_32[static_cast<std::size_t>(i)].real();
            defect = std::max(defect, std::abs(Wcol - Wrow[k]));
            defect = std::max(defect, std::abs(X3col - X3row[k].imag()));
            patch.X1[k] = Wrow[k].real();
            patch.X2[k] = Wrow[k].imag();
            patch.X3[k] = X3row[k].imag();
        }
    }
    patch.path_independence_defect = defect;
    return patch;
}

SurfacePatch induced_geometry(const SpinorField2D& field, SurfacePatch patch) {
    const Grid2D& g = field.grid;
    require_stencil_grid(g, "induced_geometry");
    patch.u.resize(g.size());
    patch.H.resize(g.size());
    patch.K.resize(g.size());
    std::vector<double> logu(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double u = std::norm(field.psi1[k]) + std::norm(field.psi2[k]);
        if (u < 1e-10)
            throw DegenerateImmersion(
                "induced_geometry: conformal factor " + fmt_g(u) +
                " below the regularity threshold 1e-10");
        patch.u[k] = u;
        patch.H[k] = field.p[k] / u;
        logu[k] = std::log(u);
    }
    const auto lxx = second_x(g, logu);
    const auto lyy = second_y(g, logu);
    for (std::size_t k = 0; k < g.size(); ++k)
        patch.K[k] = -(lxx[k] + lyy[k]) / (4.0 * patch.u[k] * patch.u[k]);

    // Cross-check the first fundamental form of the integrated X against
    // the conformal metric 4u^2 (dx^2 + dy^2) on interior nodes.
    if (patch.X1.size() == g.size()) {
        double worst = 0.0;
        const double hx2 = 2.0 * g.hx(), hy2 = 2.0 * g.hy();
        for (int i = 1; i < g.nx - 1; ++i)
            for (int j = 1; j < g.ny - 1; ++j) {
                const std::size_t k = g.index(i, j);
                double E = 0.0, F = 0.0, G = 0.0;
                for (const auto* X : {&patch.X1, &patch.X2, &patch.X3}) {
                    const double xu = ((*X)[g.index(i + 1, j)] -
                                       (*X)[g.index(i - 1, j)]) /
                                      hx2;
                    const double xv = ((*X)[g.index(i, j + 1)] -
                                       (*X)[g.index(i, j - 1)]) /
                                      hy2;
                    E += xu * xu;
                    F += xu * xv;
                    G += xv * xv;
                }
                const double m = 4.0 * patch.u[k] * patch.u[k];
                worst = std::max(worst, std::abs(E - m) / m);
                worst = std::max(worst, std::abs(G - m) / m);
                worst = std::max(worst, std::abs(F) / m);
            }
        patch.metric_check = worst;
    }
    return patch;
}

// ========================================================================
// Kenmotsu conversion.
// ========================================================================

KenmotsuData to_kenmotsu(const SpinorField2D& field, double psi2_floor) {
    const Grid2D& g = field.grid;
    require_stencil_grid(g, "to_kenmotsu");
    for (std::size_t k = 0; k < g.size(); ++k)
        if (std::abs(field.psi2[k]) <= psi2_floor)
            throw ChartError("to_kenmotsu: |psi2| = " +
                             fmt_g(std::abs(field.psi2[k])) +
                             " at a node; the chart requires psi2 != 0");
    KenmotsuData out;
    out.grid = g;
    out.f.resize(g.size());
    out.phi.resize(g.size());
    out.p_recovered.resize(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        out.f[k] = Complex(0.0, 1.0) * std::conj(field.psi1[k]) /
                   field.psi2[k];
        out.phi[k] = Complex(0.0, 1.0) * field.psi2[k] * field.psi2[k];
    }
    const auto fzb = dzbar(g, out.f);
    const auto phizb = dzbar(g, out.phi);
    double compat = 0.0, roundtrip = 0.0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const std::size_t k = g.index(i, j);
            const double fr = 1.0 + std::norm(out.f[k]);
            const Complex prec =
                -out.phi[k] * fzb[k] / (std::abs(out.phi[k]) * fr);
            out.p_recovered[k] = prec.real();
            if (i == 0 || i == g.nx - 1 || j == 0 || j == g.ny - 1) continue;
            compat = std::max(
                compat, std::abs(phizb[k] / out.phi[k] +
                                 2.0 * std::conj(out.f[k]) * fzb[k] / fr));
            roundtrip = std::max(roundtrip, std::abs(prec - field.p[k]));
        }
    out.compat_residual = compat;
    out.p_roundtrip_residual = roundtrip;
    return out;
}

// ========================================================================
// Willmore energy quadratures.
// ========================================================================

double willmore_from_p(const SpinorField2D& field) {
    std::vector<double> f(field.grid.size());
    for (std::size_t k = 0; k < f.size(); ++k)
        f[k] = field.p[k] * field.p[k];
    return 4.0 * trapezoid2d(field.grid, f);
}

double willmore_from_patch(const SurfacePatch& patch) {
    std::vector<double> f(patch.grid.size());
    for (std::size_t k = 0; k < f.size(); ++k)
        f[k] = patch.H[k] * patch.H[k] * 4.0 * patch.u[k] * patch.u[k];
    return trapezoid2d(patch.grid, f);
}

}  // namespace wrs::weierstrass
