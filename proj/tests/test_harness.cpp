#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "fga/experiment.hpp"

using namespace fga;

namespace {

// small, fast experiment: constant speed on a short domain
ExperimentConfig tiny_config() {
    ExperimentConfig cfg;
    cfg.name = "tiny";
    cfg.d = 1;
    cfg.epsilons = {1.0 / 64};
    cfg.T = 0.25;
    cfg.lo = {0.0, 0.0};
    cfg.hi = {2.0, 0.0};
    cfg.c_expr = "1";
    cfg.a0_re = "exp(-50*(x1-0.8)^2)";
    cfg.a0_im = "0";
    cfg.b0_re = "0";
    cfg.b0_im = "-exp(-50*(x1-0.8)^2)";
    cfg.s0_expr = "x1";
    cfg.mesh.dq = {1.0 / 32, 0};
    cfg.mesh.dp = {1.0 / 32, 0};
    cfg.mesh.dy = {1.0 / 32, 0};
    cfg.mesh.nq = {24, 0};
    cfg.mesh.np = {16, 0};
    cfg.mesh.q0 = {0.8 - 23.0 / 64, 0};
    cfg.flow.dt = 1.0 / 512;
    cfg.recon.x0 = {0.0, 0};
    cfg.recon.dx = {1.0 / 256, 0};
    cfg.recon.nx = {513, 0};
    cfg.reference = {"fd", 1.0 / 256, 1.0 / 2048, 0};
    cfg.methods = {"fga", "gbm"};
    cfg.gbm.init = "multi";
    cfg.gbm.n = 0;
    return cfg;
}

GridField<1> const_field(double re, int n, double L) {
    Grid<1> g{{0.0}, {L / (n - 1)}, {n}};
    GridField<1> f = GridField<1>::zeros(g);
    for (Complex& v : f.values) v = Complex(re, 0);
    return f;
}

}  // namespace

TEST_CASE("error_norms: zero for equal fields; closed form for constant offsets") {
    GridField<1> u = const_field(0.3, 201, 2.0);
    ErrorNorms z = error_norms<1>(u, u);
    CHECK(z.linf == 0.0);
    CHECK(z.l2 == 0.0);

    GridField<1> v = const_field(0.4, 201, 2.0);
    ErrorNorms n = error_norms<1>(u, v);
    CHECK(n.linf == doctest::Approx(0.1));
    // sqrt(sum 0.1^2 dx) = 0.1 sqrt(N dx) with N dx slightly above L
    double expect = 0.1 * std::sqrt(201.0 * (2.0 / 200));
    CHECK(n.l2 == doctest::Approx(expect).epsilon(1e-12));

    ErrorNorms raw = error_norms<1>(u, v, CompareMode::ComplexField, false);
    CHECK(raw.l2 == doctest::Approx(0.1 * std::sqrt(201.0)));
}

TEST_CASE("error_norms: grid mismatch is an error, amplitude mode compares |u|") {
    GridField<1> u = const_field(1.0, 101, 1.0);
    GridField<1> w = const_field(1.0, 100, 1.0);
    CHECK_THROWS_AS(error_norms<1>(u, w), GridMismatchError);

    GridField<1> a = const_field(0.0, 101, 1.0);
    GridField<1> b = const_field(0.0, 101, 1.0);
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        a.values[i] = Complex(0, 1);   // |a| = 1
        b.values[i] = Complex(-1, 0);  // |b| = 1
    }
    CHECK(error_norms<1>(a, b, CompareMode::Amplitude).linf == 0.0);
    CHECK(error_norms<1>(a, b, CompareMode::ComplexField).linf == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("convergence_order reproduces the table slopes") {
    std::vector<std::pair<double, double>> fga_linf{
        {1.0 / 64, 1.12e-1}, {1.0 / 128, 6.18e-2}, {1.0 / 256, 2.51e-2}};
    OrderFit f = convergence_order(fga_linf);
    CHECK(f.slope == doctest::Approx(1.08).epsilon(0.01));
    CHECK(f.r2 > 0.95);
    CHECK(!f.flagged);

    std::vector<std::pair<double, double>> gbm_linf{
        {1.0 / 64, 7.15e-1}, {1.0 / 128, 5.08e-1}, {1.0 / 256, 3.36e-1}};
    CHECK(convergence_order(gbm_linf).slope == doctest::Approx(0.54).epsilon(0.02));

    std::vector<std::pair<double, double>> exact{{0.1, 0.5}, {0.05, 0.25}, {0.025, 0.125}};
    CHECK(convergence_order(exact).slope == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(convergence_order({{0.1, 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(convergence_order({{0.1, -0.5}, {0.05, 0.2}}), std::invalid_argument);
}

TEST_CASE("config json round trip and validation") {
    ExperimentConfig cfg = example1_config();
    nlohmann::json j = to_json(cfg);
    ExperimentConfig back = config_from_json(j);
    CHECK(to_json(back) == j);

    nlohmann::json bad = j;
    bad["epsilon"] = nlohmann::json::array();
    CHECK_THROWS_AS(config_from_json(bad), ConfigError);

    nlohmann::json bad2 = j;
    bad2["methods"] = {"fga", "bem"};
    CHECK_THROWS_AS(config_from_json(bad2), ConfigError);
}

TEST_CASE("run_comparison without a reference method fails") {
    ExperimentConfig cfg = tiny_config();
    cfg.reference.method = "none";
    CHECK_THROWS_AS(run_comparison(cfg, 2), ConfigError);
}

TEST_CASE("report round trip, CSV row count, and rerun determinism") {
    ExperimentConfig cfg = tiny_config();
    ComparisonResult r1 = run_comparison(cfg, 2);
    ComparisonResult r2 = run_comparison(cfg, 1);  // different worker count

    nlohmann::json j1 = report_to_json(r1.report);
    nlohmann::json j2 = report_to_json(r2.report);
    j1.erase("timings");
    j2.erase("timings");
    CHECK(j1.dump() == j2.dump());  // byte-identical modulo wall clocks

    ExperimentReport back = report_from_json(report_to_json(r1.report));
    nlohmann::json jb = report_to_json(back);
    CHECK(jb == report_to_json(r1.report));

    std::string dir = "/tmp/fga_test_report";
    std::filesystem::remove_all(dir);
    emit_report(r1, dir);
    std::ifstream is(dir + "/report.json");
    REQUIRE(is.good());
    nlohmann::json parsed;
    is >> parsed;
    parsed.erase("timings");
    CHECK(parsed == j1);

    // field CSV rows = prod(nx) + header
    std::ifstream csv(dir + "/field_fga_" + eps_label(cfg.epsilons[0]) + ".csv");
    REQUIRE(csv.good());
    std::size_t lines = 0;
    std::string line;
    while (std::getline(csv, line)) ++lines;
    CHECK(lines == 513 + 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("pipeline scales exactly with the data amplitude") {
    ExperimentConfig base = tiny_config();
    base.methods = {"fga"};
    ExperimentConfig scaled = base;
    scaled.a0_re = "4*(" + base.a0_re + ")";
    scaled.b0_im = "4*(" + base.b0_im + ")";

    FgaRun<1> f1 = run_fga<1>(base, base.epsilons[0], 2);
    FgaRun<1> f4 = run_fga<1>(scaled, base.epsilons[0], 2);
    REQUIRE(f1.field.values.size() == f4.field.values.size());
    for (std::size_t n = 0; n < f1.field.values.size(); ++n)
        CHECK(f4.field.values[n] == 4.0 * f1.field.values[n]);  // power-of-two scale: exact
}

TEST_CASE("run_fga at T=0 reproduces the initial data (FBI round trip)") {
    ExperimentConfig cfg = tiny_config();
    cfg.T = 0.0;
    FgaRun<1> run = run_fga<1>(cfg, cfg.epsilons[0], 2);
    WaveProblem prob = build_problem(cfg, cfg.epsilons[0]);
    double max_u0 = 0, max_err = 0;
    for (std::size_t n = 0; n < run.field.values.size(); ++n) {
        double x = run.field.grid.node(n)[0];
        Complex u0 = prob.u0<1>(Vec<1>{x});
        max_u0 = std::max(max_u0, std::abs(u0));
        max_err = std::max(max_err, std::abs(run.field.values[n] - u0));
    }
    CHECK(max_err <= 1e-2 * max_u0);
}

TEST_CASE("atoms CSV round trip") {
    ExperimentConfig cfg = tiny_config();
    WaveProblem prob = build_problem(cfg, cfg.epsilons[0]);
    MeshSpec<1> spec = resolve_mesh<1>(cfg, cfg.epsilons[0]);
    auto [plus, minus] = split_branches<1>(prob);
    PhaseMesh<1> mesh = build_phase_mesh<1>(prob, spec);
    DecomposeResult<1> dec =
        init_atoms<1>(plus, minus, mesh, spec, cfg.epsilons[0], cfg.prune_rel, 2);
    std::string path = "/tmp/fga_test_atoms.csv";
    write_atoms_csv<1>(dec.atoms, path);
    std::vector<Atom<1>> back = read_atoms_csv<1>(path);
    REQUIRE(back.size() == dec.atoms.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].q[0] == dec.atoms[i].q[0]);
        CHECK(back[i].p[0] == dec.atoms[i].p[0]);
        CHECK(back[i].psi == dec.atoms[i].psi);
        CHECK(back[i].measure == dec.atoms[i].measure);
    }
    std::remove(path.c_str());
}

TEST_CASE("trajectory sampling writes per-atom rows") {
    ExperimentConfig cfg = tiny_config();
    cfg.methods = {"fga"};
    cfg.trajectories_stride = 32;
    std::string dir = "/tmp/fga_test_traj";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    run_comparison(cfg, 2, dir);
    std::ifstream is(dir + "/trajectories_" + eps_label(cfg.epsilons[0]) + ".csv");
    REQUIRE(is.good());
    std::string header;
    std::getline(is, header);
    CHECK(header == "atom,t,sign,Q1,P1,a_re,a_im");
    std::size_t rows = 0;
    std::string line;
    while (std::getline(is, line)) ++rows;
    CHECK(rows > 0);  // samples every 32 steps for each alive atom
    std::filesystem::remove_all(dir);
}

TEST_CASE("mesh size warnings fire above K sqrt(eps)") {
    ExperimentConfig cfg = tiny_config();
    MeshSpec<1> spec = resolve_mesh<1>(cfg, cfg.epsilons[0]);
    CHECK(spec.size_warnings(cfg.epsilons[0], 1.0).empty());  // dq = sqrt(eps)/4
    CHECK(!spec.size_warnings(cfg.epsilons[0], 0.1).empty());
}
