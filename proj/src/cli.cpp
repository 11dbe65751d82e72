#include "wrs/cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "wrs/elliptic.hpp"
#include "wrs/errors.hpp"
#include "wrs/io.hpp"
#include "wrs/mkdv.hpp"
#include "wrs/profile.hpp"
#include "wrs/revolution.hpp"
#include "wrs/spectral.hpp"
#include "wrs/willmore.hpp"

namespace wrs::cli {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTau = 2.0 * kPi;
constexpr double kTwoPiSq = 2.0 * kPi * kPi;

// ============================================================================
// Reporting helpers
// ============================================================================

// One tolerance-gated quantity.  `value` is compared against
// `tol * tol_scale`; every command aggregates its checks and exits 2 when
// any fails.
struct Check {
    std::string name;
    double value = 0.0;
    double tol = 0.0;
};

void print_value(const char* name, double v) {
    std::printf("%s = %s\n", name, io::format_double(v, 12).c_str());
}

// Prints each check as "name = value (tol t) PASS|FAIL" and returns
// whether all passed.
bool report_checks(const std::vector<Check>& checks, double tol_scale) {
    bool all = true;
    for (const auto& c : checks) {
        const double tol = c.tol * tol_scale;
        const bool ok = c.value <= tol;
        all = all && ok;
        std::printf("%s = %s (tol %s) %s\n", c.name.c_str(),
                    io::format_double(c.value, 12).c_str(),
                    io::format_double(tol, 6).c_str(), ok ? "PASS" : "FAIL");
    }
    return all;
}

void append_checks_csv(io::CsvTable& table, const std::vector<Check>& checks,
                       double tol_scale) {
    for (const auto& c : checks) {
        const double tol = c.tol * tol_scale;
        table.rows.push_back({c.name, io::csv_cell(c.value), io::csv_cell(tol),
                              c.value <= tol ? "1" : "0"});
    }
}

const char* monodromy_name(revolution::MonodromyClass c) {
    switch (c) {
        case revolution::MonodromyClass::Identity: return "identity";
        case revolution::MonodromyClass::MinusIdentity: return "minus-identity";
        case revolution::MonodromyClass::EllipticRotation: return "elliptic-rotation";
        case revolution::MonodromyClass::Hyperbolic: return "hyperbolic";
        case revolution::MonodromyClass::Parabolic: return "parabolic";
    }
    return "unknown";
}

// k = 1 Fourier phase of a profile; the drift of this phase in time
// measures the translation velocity of a traveling wave.
double mode_one_phase(const PeriodicProfile& f) {
    const int n = f.size();
    std::complex<double> c1(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        const double x = kTau * static_cast<double>(i) / static_cast<double>(n);
        c1 += f.samples[static_cast<std::size_t>(i)] *
              std::complex<double>(std::cos(x), -std::sin(x));
    }
    return std::arg(c1);
}

PeriodicProfile potential_from_p(const PeriodicProfile& p) {
    std::vector<double> v(p.samples);
    for (double& x : v) x *= 4.0;
    return make_profile(std::move(v), p.period);
}

// ============================================================================
// clifford: closed-form fixture, residual battery, optional mesh/CSV
// ============================================================================

struct CliffordOptions {
    int n = 256;
    int ny = 64;
    std::string out_mesh;
    std::string out_csv;
};

int cmd_clifford(const CliffordOptions& opt, double tol_scale) {
    const auto fx = willmore::clifford_fixture(opt.n);
    const auto quartic = willmore::QuarticCoeffs::clifford();

    const double W = revolution::willmore_energy(fx.p);
    print_value("W", W);

    const auto px = spectral::derivative(fx.p);
    double quartic_res = 0.0;
    for (int i = 0; i < opt.n; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        quartic_res = std::max(
            quartic_res, std::abs(px.samples[k] * px.samples[k] -
                                  quartic.eval(fx.p.samples[k])));
    }

    const auto el = willmore::euler_lagrange_residual(fx.p, fx.u);
    const auto schrod = willmore::schrodinger_residual(fx.p, fx.u);
    const double closure = inner(fx.r, fx.s);

    // The Schrodinger residual uses central differences and is dominated by
    // nodes near the |p| exclusion floor; it decays as h^2, so its gate
    // scales with the grid (about 1353 h^2 measured on the fixture).
    const double h = kTau / static_cast<double>(opt.n);
    std::vector<Check> checks = {
        {"energy_defect", std::abs(W - kTwoPiSq), 1e-6},
        {"quartic_residual", quartic_res, 1e-9},
        {"euler_lagrange_residual", el.res_el, 1e-8},
        {"constant_a_deviation", el.a_var, 1e-8},
        {"schrodinger_residual", schrod.residual, 5000.0 * h * h},
        {"closure_integral", std::abs(closure), 1e-8},
    };
    const bool pass = report_checks(checks, tol_scale);

    // Convergence order of the finite-difference residual under grid
    // halving (informational; the gated residuals above use spectral
    // derivatives and sit at rounding level already).  The half grid must
    // stay within the fixture's spectral self-check resolution (>= 64).
    if (opt.n >= 128 && opt.n % 2 == 0) {
        const auto half = willmore::clifford_fixture(opt.n / 2);
        const auto el_half = willmore::euler_lagrange_residual(
            half.p, half.u, willmore::DerivativeMode::CentralO2);
        const auto el_full = willmore::euler_lagrange_residual(
            fx.p, fx.u, willmore::DerivativeMode::CentralO2);
        std::printf("order check: central EL residual ratio (n=%d -> n=%d) = %s\n",
                    opt.n / 2, opt.n,
                    io::format_double(el_half.res_el / el_full.res_el, 6).c_str());
    }

    if (!opt.out_csv.empty()) {
        io::CsvTable table;
        table.header = {"quantity", "value", "tolerance", "pass"};
        table.rows.push_back({"W", io::csv_cell(W), "", ""});
        append_checks_csv(table, checks, tol_scale);
        io::write_csv(opt.out_csv, table);
        std::printf("wrote %s\n", opt.out_csv.c_str());
    }

    if (!opt.out_mesh.empty()) {
        const auto v = potential_from_p(fx.p);
        const auto traj = revolution::integrate_spinor(
            v, -1.0, fx.r.samples[0], fx.s.samples[0]);
        const auto mesh = revolution::build_revolution_mesh(traj, opt.ny);
        io::write_obj(opt.out_mesh, mesh);
        std::printf("wrote %s (%d x %d vertices)\n", opt.out_mesh.c_str(),
                    mesh.nx, mesh.ny);
    }

    return pass ? 0 : 2;
}

// ============================================================================
// flow: mKdV evolution with conservation monitoring
// ============================================================================

struct FlowOptions {
    int n = 512;
    double dt = 0.0;  // <= 0 selects the stability heuristic
    double t_final = 1.0;
    std::string initial = "clifford";  // or a CSV path with a "v" column
    double period = kTau;              // spatial period for CSV input
    std::string out_csv;
};

int cmd_flow(const FlowOptions& opt, double tol_scale) {
    PeriodicProfile v0;
    std::optional<mkdv::SpinorState> spinor;
    const bool builtin = opt.initial == "clifford";
    if (builtin) {
        const auto fx = willmore::clifford_fixture(opt.n);
        v0 = potential_from_p(fx.p);
        mkdv::SpinorState sp;
        sp.r = fx.r.samples;
        sp.s = fx.s.samples;
        spinor = std::move(sp);
    } else {
        v0 = make_profile(io::read_column_csv(opt.initial, "v"), opt.period);
    }

    double dt = opt.dt;
    if (!(dt > 0.0)) {
        dt = mkdv::stable_dt(v0);
        std::printf("dt = %s (auto)\n", io::format_double(dt, 6).c_str());
    }
    const int steps = std::max(1, static_cast<int>(std::ceil(opt.t_final / dt)));
    dt = opt.t_final / static_cast<double>(steps);

    mkdv::FlowState state;
    state.v = v0;
    const auto result = mkdv::evolve(state, dt, steps, spinor);
    const auto& rep = result.report;

    // Drifts relative to the initial values recorded at t = 0.  The closure
    // integral starts at zero on closed data, so it is normalized by the
    // spinor mass int u dx / 2, an upper bound for int |r s| dx.
    const double W0 = rep.W.front();
    double w_drift = 0.0;
    for (double w : rep.W) w_drift = std::max(w_drift, std::abs(w - W0));
    const double w_scale = std::max(std::abs(W0), 1.0);

    std::printf("steps = %d, dt = %s\n", steps, io::format_double(dt, 6).c_str());
    print_value("W_initial", W0);
    print_value("W_final", rep.W.back());

    std::vector<Check> checks = {{"W_drift_rel", w_drift / w_scale, 1e-6}};

    if (rep.has_spinor) {
        const std::size_t m = result.spinor->r.size();
        double mass = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            mass += result.spinor->r[i] * result.spinor->r[i] +
                    result.spinor->s[i] * result.spinor->s[i];
        mass *= v0.dx();
        const double c0 = rep.closure_integral.front();
        double c_drift = 0.0, dirac = 0.0;
        for (double c : rep.closure_integral)
            c_drift = std::max(c_drift, std::abs(c - c0));
        for (double d : rep.dirac_residual) dirac = std::max(dirac, d);
        print_value("closure_initial", c0);
        checks.push_back({"closure_drift_rel",
                          c_drift / std::max(0.5 * mass, 1e-300), 1e-6});
        checks.push_back({"dirac_residual_max", dirac, 1e-5});
    }

    if (builtin) {
        // Translation velocity from the mode-1 phase over a short probe
        // window (kept below half a period of phase wrap).
        const double t_probe = std::min(opt.t_final, 0.25);
        const int steps_probe =
            std::max(1, static_cast<int>(std::ceil(t_probe / dt)));
        const auto probe =
            mkdv::evolve(state, t_probe / steps_probe, steps_probe);
        double dphi = mode_one_phase(probe.state.v) - mode_one_phase(v0);
        while (dphi > kPi) dphi -= kTau;
        while (dphi < -kPi) dphi += kTau;
        // v(x, t) = v0(x + c t) shifts the mode-1 phase by +c t.
        const double velocity = dphi / t_probe;
        print_value("translation_velocity", velocity);
        print_value("translation_speed", std::abs(velocity));
    }

    const bool pass = report_checks(checks, tol_scale);

    if (!opt.out_csv.empty()) {
        io::CsvTable table;
        if (rep.has_spinor) {
            table.header = {"t", "W", "closure_integral", "dirac_residual"};
        } else {
            table.header = {"t", "W"};
        }
        const std::size_t rows = rep.t.size();
        const std::size_t stride = std::max<std::size_t>(1, rows / 1000);
        for (std::size_t i = 0; i < rows; i += stride) {
            const std::size_t k = (i + stride < rows) ? i : rows - 1;
            std::vector<std::string> row = {io::csv_cell(rep.t[k]),
                                            io::csv_cell(rep.W[k])};
            if (rep.has_spinor) {
                row.push_back(io::csv_cell(rep.closure_integral[k]));
                row.push_back(io::csv_cell(rep.dirac_residual[k]));
            }
            table.rows.push_back(std::move(row));
        }
        io::write_csv(opt.out_csv, table);
        std::printf("wrote %s\n", opt.out_csv.c_str());
    }

    return pass ? 0 : 2;
}

// ============================================================================
// bound-scan: energy of the alpha family against 2 pi^2, bound function f
// ============================================================================

struct BoundScanOptions {
    double alpha_min = 0.01;
    double alpha_max = 10.0;
    int alpha_count = 40;
    int n = 1024;
    std::string out_csv;
};

int cmd_bound_scan(const BoundScanOptions& opt, double tol_scale) {
    if (!(opt.alpha_min > 0.0) || !(opt.alpha_max >= opt.alpha_min))
        throw DomainError("bound-scan: need 0 < alpha-min <= alpha-max");

    io::CsvTable table;
    table.header = {"alpha", "beta", "ksq", "W_elliptic", "W_quadrature",
                    "exceeds"};
    double max_rel = 0.0;
    bool all_exceed = true;
    const double lmin = std::log(opt.alpha_min);
    const double lmax = std::log(opt.alpha_max);
    for (int i = 0; i < opt.alpha_count; ++i) {
        const double f = (opt.alpha_count == 1)
                             ? 0.0
                             : static_cast<double>(i) /
                                   static_cast<double>(opt.alpha_count - 1);
        const double alpha = std::exp(lmin + f * (lmax - lmin));
        const auto bv = willmore::bound_verdict(alpha, opt.n);
        max_rel = std::max(max_rel, bv.rel_diff);
        all_exceed = all_exceed && bv.exceeds;
        table.rows.push_back({io::csv_cell(bv.alpha), io::csv_cell(bv.beta),
                              io::csv_cell(bv.ksq),
                              io::csv_cell(bv.W_elliptic),
                              io::csv_cell(bv.W_quadrature),
                              bv.exceeds ? "1" : "0"});
    }

    // The bound function over a fine modulus grid on (1/sqrt2, 1].
    constexpr int kGrid = 10000;
    double f_min = std::numeric_limits<double>::infinity();
    double argmin_ksq = 0.0;
    for (int j = 1; j <= kGrid; ++j) {
        const double ksq =
            0.5 + 0.5 * static_cast<double>(j) / static_cast<double>(kGrid);
        const double fk = elliptic::f_of_k(elliptic::EllipticModulus::from_ksq(ksq));
        if (fk < f_min) {
            f_min = fk;
            argmin_ksq = ksq;
        }
    }
    const double f_at_one =
        elliptic::f_of_k(elliptic::EllipticModulus::from_k(1.0));
    const auto root = elliptic::solve_two_E_equals_F();

    print_value("f_min", f_min);
    print_value("argmin_ksq", argmin_ksq);
    print_value("pi_over_4", kPi / 4.0);
    print_value("f_at_one", f_at_one);
    print_value("two_E_equals_F_ksq", root.ksq);
    std::printf("all alpha exceed 2*pi^2: %s\n", all_exceed ? "yes" : "no");
    std::printf("bound f > pi/4 on grid: %s\n",
                f_min > kPi / 4.0 ? "yes" : "no");

    std::vector<Check> checks = {
        {"energy_route_rel_diff_max", max_rel, 1e-6},
        {"f_at_one_defect", std::abs(f_at_one - 1.0), 1e-9},
        {"root_ksq_defect", std::abs(root.ksq - 0.826), 1e-3},
    };
    bool pass = report_checks(checks, tol_scale);
    pass = pass && all_exceed && f_min > kPi / 4.0 && root.ksq >= 0.75 &&
           root.ksq <= 0.95;

    if (!opt.out_csv.empty()) {
        io::write_csv(opt.out_csv, table);
        std::printf("wrote %s\n", opt.out_csv.c_str());
    }

    return pass ? 0 : 2;
}

// ============================================================================
// revolve: stationary profile -> spinor -> closure or obstruction
// ============================================================================

struct RevolveOptions {
    double alpha = 0.0;
    int n = 512;
    int ny = 64;
    std::string out_mesh;
    std::string out_csv;
};

int cmd_revolve(const RevolveOptions& opt, double tol_scale) {
    const auto coeffs = willmore::QuarticCoeffs::alpha_family(opt.alpha);
    const auto prof = willmore::stationary_profile(coeffs, opt.n);
    const bool sign_definite = prof.branch == willmore::Branch::SignDefinite;

    print_value("alpha", opt.alpha);
    std::printf("branch = %s\n",
                sign_definite ? "sign-definite" : "sign-changing");
    print_value("period", prof.p.period);
    print_value("p_min", prof.p_min);
    print_value("p_max", prof.p_max);

    const auto v = potential_from_p(prof.p);
    const auto mono = revolution::monodromy(v, -1.0);
    const int q = revolution::closing_periods(mono);
    std::printf("monodromy = %s (trace %s)\n",
                monodromy_name(mono.classification),
                io::format_double(mono.trace(), 12).c_str());
    if (mono.classification == revolution::MonodromyClass::EllipticRotation)
        print_value("rotation_angle", mono.angle);
    std::printf("closing_periods = %d\n", q);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    double closure = nan, w_quad = nan, w_ell = nan, rel = nan;
    double d_direct = nan, d_parts = nan, d_closed = nan;
    std::vector<Check> checks;
    bool pass_extra = true;

    std::optional<revolution::SpinorTrajectory> traj;
    bool torus = false;
    if (q > 0) {
        traj = revolution::integrate_spinor(v, -1.0, 1.0, 0.0, q);
        const auto closed = revolution::torus_closure_test(*traj);
        closure = closed.closure_integral;
        torus = closed.verdict == revolution::ClosureVerdict::Torus;
        print_value("closure_integral", closure);
        std::printf("closure verdict = %s\n", torus ? "torus" : "cylinder");
    } else {
        std::printf("trajectory does not close within 16 potential periods\n");
    }

    if (sign_definite) {
        const auto cf = willmore::periodic_conformal_factor(prof.p);
        const auto d0 = willmore::delta0(prof, cf.u);
        d_direct = d0.direct;
        d_parts = d0.parts;
        d_closed = d0.closed;
        w_quad = revolution::willmore_energy(prof.p);
        print_value("delta0_direct", d0.direct);
        print_value("delta0_parts", d0.parts);
        print_value("delta0_closed", d0.closed);
        print_value("W_quadrature", w_quad);
        const double scale = std::abs(d0.direct);
        const double pairwise =
            std::max({std::abs(d0.direct - d0.parts),
                      std::abs(d0.direct - d0.closed),
                      std::abs(d0.parts - d0.closed)}) /
            std::max(scale, 1e-300);
        checks.push_back({"delta0_pairwise_rel", pairwise, 1e-8});
        pass_extra = d0.direct > 0.0;
        std::printf("verdict = no torus (delta0 %s 0 obstructs closure)\n",
                    d0.direct > 0.0 ? ">" : "<=");
    } else {
        const auto bv = willmore::bound_verdict(opt.alpha, opt.n);
        w_quad = bv.W_quadrature;
        w_ell = bv.W_elliptic;
        rel = bv.rel_diff;
        print_value("W_quadrature", bv.W_quadrature);
        print_value("W_elliptic", bv.W_elliptic);
        std::printf("W exceeds 2*pi^2: %s\n", bv.exceeds ? "yes" : "no");
        checks.push_back({"energy_route_rel_diff", bv.rel_diff, 1e-6});
        pass_extra = bv.exceeds;
    }

    bool pass = report_checks(checks, tol_scale) && pass_extra;

    if (!opt.out_mesh.empty()) {
        if (traj && torus) {
            const auto mesh = revolution::build_revolution_mesh(*traj, opt.ny);
            io::write_obj(opt.out_mesh, mesh);
            std::printf("wrote %s (%d x %d vertices)\n", opt.out_mesh.c_str(),
                        mesh.nx, mesh.ny);
        } else {
            std::printf("mesh not written (surface does not close)\n");
        }
    }

    if (!opt.out_csv.empty()) {
        io::CsvTable table;
        table.header = {"alpha", "branch", "monodromy", "closing_periods",
                        "closure_integral", "W_quadrature", "W_elliptic",
                        "rel_diff", "delta0_direct", "delta0_parts",
                        "delta0_closed"};
        table.rows.push_back(
            {io::csv_cell(opt.alpha),
             sign_definite ? "sign-definite" : "sign-changing",
             monodromy_name(mono.classification), std::to_string(q),
             io::csv_cell(closure), io::csv_cell(w_quad), io::csv_cell(w_ell),
             io::csv_cell(rel), io::csv_cell(d_direct),
             io::csv_cell(d_parts), io::csv_cell(d_closed)});
        io::write_csv(opt.out_csv, table);
        std::printf("wrote %s\n", opt.out_csv.c_str());
    }

    return pass ? 0 : 2;
}

// ============================================================================
// mesh: OBJ export of a closed revolution surface
// ============================================================================

struct MeshOptions {
    std::optional<double> alpha;  // absent -> Clifford fixture
    int n = 256;
    int ny = 64;
    std::string out_mesh;
};

int cmd_mesh(const MeshOptions& opt, double /*tol_scale*/) {
    revolution::SpinorTrajectory traj;
    if (!opt.alpha) {
        const auto fx = willmore::clifford_fixture(opt.n);
        const auto v = potential_from_p(fx.p);
        traj = revolution::integrate_spinor(v, -1.0, fx.r.samples[0],
                                            fx.s.samples[0]);
    } else {
        const auto coeffs = willmore::QuarticCoeffs::alpha_family(*opt.alpha);
        const auto prof = willmore::stationary_profile(coeffs, opt.n);
        const auto v = potential_from_p(prof.p);
        const auto mono = revolution::monodromy(v, -1.0);
        const int q = revolution::closing_periods(mono);
        if (q == 0) {
            std::printf("trajectory does not close within 16 potential "
                        "periods; no mesh written\n");
            return 2;
        }
        traj = revolution::integrate_spinor(v, -1.0, 1.0, 0.0, q);
        const auto closed = revolution::torus_closure_test(traj);
        if (closed.verdict != revolution::ClosureVerdict::Torus) {
            std::printf("surface is cylinder-type (closure integral %s); "
                        "no mesh written\n",
                        io::format_double(closed.closure_integral, 6).c_str());
            return 2;
        }
    }
    const auto mesh = revolution::build_revolution_mesh(traj, opt.ny);
    io::write_obj(opt.out_mesh, mesh);
    std::printf("wrote %s (%d x %d vertices, %d quads)\n", opt.out_mesh.c_str(),
                mesh.nx, mesh.ny, mesh.nx * mesh.ny);
    return 0;
}

}  // namespace

// ============================================================================
// Argument parsing and dispatch
// ============================================================================

int run(int argc, char** argv) {
    CLI::App app{"Weierstrass-representation surface toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "Read options from a key = value file ([subcommand] "
                   "sections address subcommand options); flags win");

    double tol_scale = 1.0;
    unsigned long seed = 0;
    app.add_option("--tol-scale", tol_scale,
                   "Multiplier applied to all default tolerances")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", seed,
                   "Seed for randomized property checks (reserved; all "
                   "built-in checks are deterministic)");

    CliffordOptions cl;
    auto* sub_cl = app.add_subcommand(
        "clifford", "Closed-form Clifford fixture and residual battery");
    sub_cl->fallthrough();
    sub_cl->add_option("--n", cl.n, "Profile samples (even, >= 16)");
    sub_cl->add_option("--ny", cl.ny, "Mesh samples around the axis");
    sub_cl->add_option("--out-mesh", cl.out_mesh, "OBJ output path");
    sub_cl->add_option("--out-csv", cl.out_csv, "Residual CSV output path");

    FlowOptions fl;
    auto* sub_fl = app.add_subcommand(
        "flow", "mKdV evolution with conservation monitoring");
    sub_fl->fallthrough();
    sub_fl->add_option("--n", fl.n, "Grid size for the built-in initial datum");
    sub_fl->add_option("--dt", fl.dt, "Time step (<= 0 selects the heuristic)");
    sub_fl->add_option("--t-final", fl.t_final, "Total flow time")
        ->check(CLI::PositiveNumber);
    sub_fl->add_option("--initial", fl.initial,
                       "'clifford' or a CSV file with a 'v' column");
    sub_fl->add_option("--period", fl.period,
                       "Spatial period for CSV initial data")
        ->check(CLI::PositiveNumber);
    sub_fl->add_option("--out-csv", fl.out_csv, "Conservation CSV output path");

    BoundScanOptions bs;
    auto* sub_bs = app.add_subcommand(
        "bound-scan", "Energy bound sweep over the alpha family");
    sub_bs->fallthrough();
    sub_bs->add_option("--alpha-min", bs.alpha_min, "Smallest alpha (> 0)");
    sub_bs->add_option("--alpha-max", bs.alpha_max, "Largest alpha");
    sub_bs->add_option("--alpha-count", bs.alpha_count,
                       "Number of log-spaced alpha values")
        ->check(CLI::PositiveNumber);
    sub_bs->add_option("--n", bs.n, "Quadrature grid per alpha");
    sub_bs->add_option("--out-csv", bs.out_csv, "Sweep CSV output path");

    RevolveOptions rv;
    auto* sub_rv = app.add_subcommand(
        "revolve", "Stationary profile, monodromy, closure or obstruction");
    sub_rv->fallthrough();
    sub_rv->add_option("--alpha", rv.alpha, "Family parameter")->required();
    sub_rv->add_option("--n", rv.n, "Profile samples (even, >= 16)");
    sub_rv->add_option("--ny", rv.ny, "Mesh samples around the axis");
    sub_rv->add_option("--out-mesh", rv.out_mesh, "OBJ output path");
    sub_rv->add_option("--out-csv", rv.out_csv, "Summary CSV output path");

    MeshOptions ms;
    double ms_alpha = 0.0;
    auto* sub_ms = app.add_subcommand(
        "mesh", "OBJ export of a closed revolution surface");
    sub_ms->fallthrough();
    auto* ms_alpha_opt = sub_ms->add_option(
        "--alpha", ms_alpha, "Family parameter (omit for the Clifford torus)");
    sub_ms->add_option("--n", ms.n, "Profile samples (even, >= 16)");
    sub_ms->add_option("--ny", ms.ny, "Mesh samples around the axis");
    sub_ms->add_option("--out-mesh", ms.out_mesh, "OBJ output path")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::FileError& e) {
        app.exit(e);
        return 1;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sub_cl->parsed()) return cmd_clifford(cl, tol_scale);
        if (sub_fl->parsed()) return cmd_flow(fl, tol_scale);
        if (sub_bs->parsed()) return cmd_bound_scan(bs, tol_scale);
        if (sub_rv->parsed()) return cmd_revolve(rv, tol_scale);
        if (sub_ms->parsed()) {
            if (ms_alpha_opt->count() > 0) ms.alpha = ms_alpha;
            return cmd_mesh(ms, tol_scale);
        }
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const InstabilityError& e) {
        std::fprintf(stderr, "instability: %s\n", e.what());
        return 3;
    } catch (const BlowUpError& e) {
        std::fprintf(stderr, "instability: %s\n", e.what());
        return 3;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;  // unreachable with require_subcommand(1)
}

}  // namespace wrs::cli
