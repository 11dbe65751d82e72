#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wrs/cli.hpp"
#include "wrs/errors.hpp"
#include "wrs/io.hpp"
#include "wrs/mesh.hpp"
#include "wrs/revolution.hpp"
#include "wrs/willmore.hpp"

namespace {

namespace fs = std::filesystem;

// Scratch directory for files written by these tests.
fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "wrs_cli_io_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Invokes the command-line entry point in-process.
int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "wrs");
    std::vector<char*> argv;
    argv.reserve(args.size());
    for (auto& a : args) argv.push_back(a.data());
    return wrs::cli::run(static_cast<int>(argv.size()), argv.data());
}

int count_prefix_lines(const std::string& text, const std::string& prefix) {
    int count = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(prefix, 0) == 0) ++count;
    return count;
}

wrs::SurfaceMesh small_clifford_mesh(int n, int ny) {
    const auto fx = wrs::willmore::clifford_fixture(n);
    std::vector<double> v(fx.p.samples);
    for (double& x : v) x *= 4.0;
    const auto traj = wrs::revolution::integrate_spinor(
        wrs::make_profile(std::move(v), fx.p.period), -1.0, fx.r.samples[0],
        fx.s.samples[0]);
    return wrs::revolution::build_revolution_mesh(traj, ny);
}

}  // namespace

TEST_CASE("csv cells are round-trippable 17-digit strings") {
    const double values[] = {0.0,     1.0,   -1.0,        0.5,
                             1.0 / 3, 2e-300, 6.02214076e23,
                             19.739208802178716, -7.25};
    for (double v : values) {
        const std::string cell = wrs::io::csv_cell(v);
        char* end = nullptr;
        const double back = std::strtod(cell.c_str(), &end);
        CHECK(*end == '\0');
        CHECK(back == v);
    }
    CHECK(wrs::io::csv_cell(1.0) == "1");
    CHECK(wrs::io::csv_cell(0.5) == "0.5");
    CHECK(wrs::io::format_double(19.739208802178716, 9) == "19.7392088");
    CHECK(wrs::io::format_double(-2.0, 9) == "-2");
}

TEST_CASE("csv writer emits header plus rows and validates widths") {
    wrs::io::CsvTable t;
    t.header = {"a", "b"};
    t.rows = {{"1", "2"}, {"3.5", "x"}};
    CHECK(wrs::io::to_string(t) == "a,b\n1,2\n3.5,x\n");

    t.rows.push_back({"only-one"});
    CHECK_THROWS_AS(wrs::io::to_string(t), wrs::IoError);
    t.rows.pop_back();

    const auto path = scratch("writer.csv");
    wrs::io::write_csv(path.string(), t);
    CHECK(read_file(path) == "a,b\n1,2\n3.5,x\n");
    CHECK_THROWS_AS(
        wrs::io::write_csv("/nonexistent-dir/out.csv", t), wrs::IoError);
}

TEST_CASE("obj export formats vertices and seam-wrapped quads") {
    const auto mesh = small_clifford_mesh(64, 8);
    REQUIRE(mesh.nx == 64);
    REQUIRE(mesh.ny == 8);
    const std::string obj = wrs::io::to_obj_string(mesh);

    CHECK(count_prefix_lines(obj, "v ") == 64 * 8);
    CHECK(count_prefix_lines(obj, "f ") == 64 * 8);

    // First vertex line reproduces the 9-digit formatting of vertex 0.
    std::istringstream in(obj);
    std::string first;
    std::getline(in, first);
    const std::string expected = "v " + wrs::io::format_double(mesh.X1[0], 9) +
                                 " " + wrs::io::format_double(mesh.X2[0], 9) +
                                 " " + wrs::io::format_double(mesh.X3[0], 9);
    CHECK(first == expected);

    // First face joins rows 0 and 1; the last face wraps both seams.
    CHECK(obj.find("f 1 9 10 2\n") != std::string::npos);
    const std::string tail = "f 512 8 1 505\n";
    CHECK(obj.rfind(tail) == obj.size() - tail.size());

    wrs::SurfaceMesh tiny;
    tiny.nx = 2;
    tiny.ny = 2;
    CHECK_THROWS_AS(wrs::io::to_obj_string(tiny), wrs::IoError);
}

TEST_CASE("read_column_csv retrieves the named column and validates input") {
    const auto path = scratch("cols.csv");
    std::ofstream(path) << "x,v\n0,1.5\n1,-2.5e-3\n";

    const auto v = wrs::io::read_column_csv(path.string(), "v");
    REQUIRE(v.size() == 2);
    CHECK(v[0] == 1.5);
    CHECK(v[1] == -2.5e-3);
    const auto x = wrs::io::read_column_csv(path.string(), "x");
    CHECK(x[1] == 1.0);

    CHECK_THROWS_AS(wrs::io::read_column_csv(path.string(), "missing"),
                    wrs::IoError);
    CHECK_THROWS_AS(wrs::io::read_column_csv("/no/such/file.csv", "v"),
                    wrs::IoError);

    std::ofstream(path) << "v\nnot-a-number\n";
    CHECK_THROWS_AS(wrs::io::read_column_csv(path.string(), "v"),
                    wrs::IoError);
    std::ofstream(path) << "v\n";
    CHECK_THROWS_AS(wrs::io::read_column_csv(path.string(), "v"),
                    wrs::IoError);
    std::ofstream(path) << "";
    CHECK_THROWS_AS(wrs::io::read_column_csv(path.string(), "v"),
                    wrs::IoError);
}

TEST_CASE("cli clifford passes at defaults and honors tol-scale") {
    CHECK(run_cli({"clifford", "--n", "64"}) == 0);
    CHECK(run_cli({"clifford", "--n", "64", "--tol-scale", "1e-13"}) == 2);
}

TEST_CASE("cli clifford writes the residual table and the mesh") {
    const auto csv = scratch("clifford.csv");
    const auto obj = scratch("clifford.obj");
    CHECK(run_cli({"clifford", "--n", "64", "--ny", "8", "--out-csv",
                   csv.string(), "--out-mesh", obj.string()}) == 0);

    const std::string table = read_file(csv);
    CHECK(table.rfind("quantity,value,tolerance,pass\n", 0) == 0);
    CHECK(count_prefix_lines(table, "energy_defect,") == 1);
    CHECK(count_prefix_lines(table, "schrodinger_residual,") == 1);

    const std::string mesh = read_file(obj);
    CHECK(count_prefix_lines(mesh, "v ") == 64 * 8);
    CHECK(count_prefix_lines(mesh, "f ") == 64 * 8);
}

TEST_CASE("cli flow conserves on the built-in datum") {
    const auto csv = scratch("flow.csv");
    CHECK(run_cli({"flow", "--n", "256", "--t-final", "0.1", "--out-csv",
                   csv.string()}) == 0);
    const std::string table = read_file(csv);
    CHECK(table.rfind("t,W,closure_integral,dirac_residual\n", 0) == 0);
    CHECK(count_prefix_lines(table, "0,") == 1);  // t = 0 row present
}

TEST_CASE("cli flow accepts csv initial data and zero stays zero") {
    const auto init = scratch("zero_init.csv");
    wrs::io::CsvTable z;
    z.header = {"v"};
    for (int i = 0; i < 16; ++i) z.rows.push_back({"0"});
    wrs::io::write_csv(init.string(), z);

    const auto out = scratch("zero_flow.csv");
    CHECK(run_cli({"flow", "--initial", init.string(), "--t-final", "0.25",
                   "--out-csv", out.string()}) == 0);
    const std::string table = read_file(out);
    CHECK(table.rfind("t,W\n", 0) == 0);
    std::istringstream in(table);
    std::string line;
    std::getline(in, line);  // header
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(line.substr(line.find(',') + 1) == "0");
    }
    CHECK(rows >= 2);

    CHECK(run_cli({"flow", "--initial", "/no/such/file.csv"}) == 1);
}

TEST_CASE("cli flow exits 3 when the step size is unstable") {
    CHECK(run_cli({"flow", "--dt", "0.05", "--t-final", "0.5"}) == 3);
}

TEST_CASE("cli bound-scan writes the sweep table and passes the verdict") {
    const auto csv = scratch("scan.csv");
    CHECK(run_cli({"bound-scan", "--alpha-count", "3", "--n", "256",
                   "--out-csv", csv.string()}) == 0);
    const std::string table = read_file(csv);
    CHECK(table.rfind("alpha,beta,ksq,W_elliptic,W_quadrature,exceeds\n", 0) ==
          0);
    std::istringstream in(table);
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(line.substr(line.size() - 2) == ",1");  // every alpha exceeds
    }
    CHECK(rows == 3);

    CHECK(run_cli({"bound-scan", "--alpha-min", "-1"}) == 2);
}

TEST_CASE("cli revolve reports both branches with correct exit codes") {
    const auto csv = scratch("revolve.csv");
    CHECK(run_cli({"revolve", "--alpha", "-0.03125", "--n", "256", "--out-csv",
                   csv.string()}) == 0);
    const std::string table = read_file(csv);
    CHECK(table.find("sign-definite") != std::string::npos);
    CHECK(table.find("elliptic-rotation") != std::string::npos);

    CHECK(run_cli({"revolve", "--alpha", "1", "--n", "256"}) == 0);
    CHECK(run_cli({"revolve", "--alpha", "-0.07"}) == 2);  // no oscillation
    CHECK(run_cli({"revolve"}) == 2);  // --alpha is required
}

TEST_CASE("cli mesh exports the closed torus and refuses open trajectories") {
    const auto obj = scratch("torus.obj");
    CHECK(run_cli({"mesh", "--n", "64", "--ny", "8", "--out-mesh",
                   obj.string()}) == 0);
    const std::string mesh = read_file(obj);
    CHECK(count_prefix_lines(mesh, "v ") == 64 * 8);
    CHECK(count_prefix_lines(mesh, "f ") == 64 * 8);

    const auto open_obj = scratch("open.obj");
    std::filesystem::remove(open_obj);
    CHECK(run_cli({"mesh", "--alpha", "1", "--n", "128", "--out-mesh",
                   open_obj.string()}) == 2);
    CHECK(!std::filesystem::exists(open_obj));

    CHECK(run_cli({"mesh"}) == 2);  // --out-mesh is required
}

TEST_CASE("cli reruns with identical configs are byte-identical") {
    const auto a = scratch("det_a.csv");
    const auto b = scratch("det_b.csv");
    CHECK(run_cli({"bound-scan", "--alpha-count", "3", "--n", "256",
                   "--out-csv", a.string()}) == 0);
    CHECK(run_cli({"bound-scan", "--alpha-count", "3", "--n", "256",
                   "--out-csv", b.string()}) == 0);
    CHECK(read_file(a) == read_file(b));

    const auto fa = scratch("det_fa.csv");
    const auto fb = scratch("det_fb.csv");
    CHECK(run_cli({"flow", "--n", "256", "--t-final", "0.05", "--out-csv",
                   fa.string()}) == 0);
    CHECK(run_cli({"flow", "--n", "256", "--t-final", "0.05", "--out-csv",
                   fb.string()}) == 0);
    CHECK(read_file(fa) == read_file(fb));
}

TEST_CASE("cli config file supplies defaults and flags win") {
    const auto cfg = scratch("run.ini");
    const auto from_cfg = scratch("from_cfg.csv");
    std::ofstream(cfg) << "tol-scale = 0.5\n\n[clifford]\nn = 64\nout-csv = "
                       << from_cfg.string() << "\n";

    std::filesystem::remove(from_cfg);
    CHECK(run_cli({"--config", cfg.string(), "clifford"}) == 0);
    REQUIRE(std::filesystem::exists(from_cfg));

    // tol-scale 0.5 from the config halves the energy tolerance to 5e-7.
    const std::string table = read_file(from_cfg);
    const auto pos = table.find("energy_defect,");
    REQUIRE(pos != std::string::npos);
    std::istringstream row(table.substr(pos));
    std::string cell;
    std::getline(row, cell, ',');  // name
    std::getline(row, cell, ',');  // value
    std::getline(row, cell, ',');  // tolerance
    CHECK(std::strtod(cell.c_str(), nullptr) == doctest::Approx(5e-7));

    // A flag overrides the config value for the same option.
    const auto from_flag = scratch("from_flag.csv");
    std::filesystem::remove(from_flag);
    CHECK(run_cli({"--config", cfg.string(), "clifford", "--out-csv",
                   from_flag.string()}) == 0);
    CHECK(std::filesystem::exists(from_flag));

    CHECK(run_cli({"--config", "/no/such/config.ini", "clifford"}) == 1);
}

TEST_CASE("cli usage errors follow the exit-code contract") {
    CHECK(run_cli({"--help"}) == 0);
    CHECK(run_cli({"clifford", "--bogus-flag"}) == 2);
    CHECK(run_cli({}) == 2);  // a subcommand is required
}

TEST_CASE("cli flow dirac gate fails below spatial resolution") {
    // At n = 128 the spectral truncation floor of the spinor residual
    // (about 4.5e-5) sits above the 1e-5 gate: the run completes but the
    // verdict is a tolerance failure, not an instability.
    CHECK(run_cli({"flow", "--n", "128", "--t-final", "0.05"}) == 2);
}
