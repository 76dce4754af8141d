// Acceptance suite: runs each accuracy and property gate at its stated
// tolerance and prints one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "fga/experiment.hpp"
#include "fga/parallel.hpp"

using namespace fga;

namespace {

int g_failures = 0;

double now_s() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

void report(const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

bool within(double value, double target, double rel) {
    return std::abs(value - target) <= rel * std::abs(target);
}

std::string cell(double value, double target) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.3g (target %.3g, %+.0f%%)", value, target,
                  100.0 * (value - target) / target);
    return buf;
}

const RunRecord* find_run(const ExperimentReport& rep, const std::string& method, double eps) {
    for (const RunRecord& r : rep.runs)
        if (r.method == method && r.eps == eps) return &r;
    return nullptr;
}

// ---- criterion 6: property suites ----

void criterion_6a(int threads) {
    ExperimentConfig cfg = example1_config();
    cfg.T = 0.0;
    cfg.epsilons = {1.0 / 64};
    const double eps = 1.0 / 64;

    auto round_trip_err = [&](const ExperimentConfig& c) {
        FgaRun<1> run = run_fga<1>(c, eps, threads);
        WaveProblem prob = build_problem(c, eps);
        double max_u0 = 0, max_err = 0;
        for (std::size_t n = 0; n < run.field.values.size(); ++n) {
            double x = run.field.grid.node(n)[0];
            Complex u0 = prob.u0<1>(Vec<1>{x});
            max_u0 = std::max(max_u0, std::abs(u0));
            max_err = std::max(max_err, std::abs(run.field.values[n] - u0));
        }
        return std::pair{max_err, max_u0};
    };

    auto [err, max_u0] = round_trip_err(cfg);

    ExperimentConfig fine = cfg;
    MeshConfig m = cfg.mesh_for(eps);
    m.dq[0] /= 2;
    m.dp[0] /= 2;
    m.dy[0] /= 2;
    m.nq[0] *= 2;
    m.np[0] *= 2;
    fine.mesh = m;
    fine.mesh_overrides.clear();
    auto [err_fine, mu2] = round_trip_err(fine);
    (void)mu2;

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "linf %.3g vs bound %.3g (max|u0| = %.3g); refined mesh: %.3g", err,
                  1e-2 * max_u0, max_u0, err_fine);
    report("criterion 6a FBI round-trip at T=0", err <= 1e-2 * max_u0 && err_fine < err, buf);
}

struct MonitorStats {
    double min_zz = 1e300;
    double max_sympl = 0;
    double max_rel1 = 0, max_rel2 = 0;  // -(dqQ)P + p and (dpQ)P residuals
};

template <int D>
void observe(std::span<const Atom<D>> atoms, MonitorStats& st) {
    for (const Atom<D>& a : atoms) {
        if (!a.alive) continue;
        st.min_zz = std::min(st.min_zz, a.var.min_eig_zzstar());
        st.max_sympl = std::max(st.max_sympl, a.var.symplectic_residual());
        for (int j = 0; j < D; ++j) {
            double r1 = -a.p[j], r2 = 0;
            for (int k = 0; k < D; ++k) {
                r1 += a.var.dqQ[j][k] * a.P[k];
                r2 += a.var.dpQ[j][k] * a.P[k];
            }
            st.max_rel1 = std::max(st.max_rel1, std::abs(r1));
            st.max_rel2 = std::max(st.max_rel2, std::abs(r2));
        }
    }
}

void criterion_6bc(int threads) {
    MonitorStats st;

    {  // example 1 population at eps = 1/64, full flow settings
        ExperimentConfig cfg = example1_config();
        const double eps = 1.0 / 64;
        WaveProblem prob = build_problem(cfg, eps);
        MeshSpec<1> spec = resolve_mesh<1>(cfg, eps);
        auto [plus, minus] = split_branches<1>(prob);
        PhaseMesh<1> mesh = build_phase_mesh<1>(prob, spec);
        DecomposeResult<1> dec = init_atoms<1>(plus, minus, mesh, spec, eps, 1e-12, threads);
        FlowSettings fs{cfg.flow.dt, cfg.T, cfg.p_min, cfg.flow.form};
        auto monitor = [&st](double, std::span<const Atom<1>> view) { observe<1>(view, st); };
        propagate<1>(std::span<Atom<1>>(dec.atoms), fs, prob.speed, threads, monitor, 16);
        observe<1>(std::span<const Atom<1>>(dec.atoms), st);
    }
    {  // every 8th q-line of the 2D example population, same flow settings
        ExperimentConfig cfg = example3_config();
        const double eps = 1.0 / 128;
        WaveProblem prob = build_problem(cfg, eps);
        MeshSpec<2> spec = resolve_mesh<2>(cfg, eps);
        spec.nq = {4, 4};
        spec.dq = {8.0 / 32, 8.0 / 32};
        auto [plus, minus] = split_branches<2>(prob);
        PhaseMesh<2> mesh = build_phase_mesh<2>(prob, spec);
        DecomposeResult<2> dec = init_atoms<2>(plus, minus, mesh, spec, eps, 1e-12, threads);
        FlowSettings fs{cfg.flow.dt, cfg.T, cfg.p_min, cfg.flow.form};
        auto monitor = [&st](double, std::span<const Atom<2>> view) { observe<2>(view, st); };
        propagate<2>(std::span<Atom<2>>(dec.atoms), fs, prob.speed, threads, monitor, 64);
        observe<2>(std::span<const Atom<2>>(dec.atoms), st);
    }

    char buf[200];
    std::snprintf(buf, sizeof buf, "max |FJF^T - J| = %.2e, relation residuals %.2e / %.2e",
                  st.max_sympl, st.max_rel1, st.max_rel2);
    report("criterion 6b symplectic structure",
           st.max_sympl <= 1e-6 && st.max_rel1 <= 1e-6 && st.max_rel2 <= 1e-6, buf);
    std::snprintf(buf, sizeof buf, "min eig(ZZ*) = %.9f (bound %.9f)", st.min_zz, 2.0 - 1e-6);
    report("criterion 6c ZZ* lower bound", st.min_zz >= 2.0 - 1e-6, buf);
}

template <int D>
double const_speed_prefactor_gap(const char* c_expr, Vec<D> q, Vec<D> p) {
    SpeedField c = SpeedField::build(parse_expression(c_expr), D);
    Atom<D> a;
    a.sign = +1;
    a.q = q;
    a.p = p;
    a.Q = q;
    a.P = p;
    a.var = VariationalState<D>::identity();
    a.a = Complex(std::pow(2.0, 0.5 * D), 0.0);
    const double dt = 1.0 / 1024;
    FlowSettings fs{dt, 1.0, 1e-6, PrefactorForm::LogDerivative};
    Complex prev = a.a;
    double gap = 0;
    for (int s = 0; s < 1024; ++s) {
        rk4_step<D>(a, dt, c, fs);
        Complex root = sqrt_continuous(cdet<static_cast<std::size_t>(D)>(a.var.Z()), prev);
        gap = std::max(gap, std::abs(a.a - root));
        prev = root;
    }
    return gap;
}

void criterion_6d() {
    double g1 = const_speed_prefactor_gap<1>("2", {0.3}, {1.1});
    double g2 = const_speed_prefactor_gap<2>("1.5", {0.2, -0.1}, {1.0, 0.4});
    char buf[120];
    std::snprintf(buf, sizeof buf, "|a - sqrt(det Z)| = %.2e (1D), %.2e (2D)", g1, g2);
    report("criterion 6d constant-speed prefactor", g1 <= 1e-8 && g2 <= 1e-8, buf);
}

void criterion_6e() {
    SpeedField xsq = SpeedField::build(parse_expression("x1^2"), 1);
    const double T = 0.25;
    auto end_state = [&](double dt) {
        Atom<1> a;
        a.sign = +1;
        a.q = {0.5};
        a.p = {1.0};
        a.Q = {0.5};
        a.P = {1.0};
        a.var = VariationalState<1>::identity();
        a.a = Complex(std::sqrt(2.0), 0.0);
        FlowSettings fs{dt, T, 1e-6, PrefactorForm::LogDerivative};
        propagate<1>(std::span<Atom<1>>(&a, 1), fs, xsq, 1);
        return a;
    };
    Atom<1> ref = end_state(T / 1024);
    auto err = [&](const Atom<1>& a) {
        return std::abs(a.Q[0] - ref.Q[0]) + std::abs(a.P[0] - ref.P[0]) + std::abs(a.a - ref.a);
    };
    double order = std::log2(err(end_state(T / 16)) / err(end_state(T / 32)));
    auto drift = [&](double dt) {
        Atom<1> a = end_state(dt);
        return std::abs(xsq.eval<1>(a.Q).value * std::abs(a.P[0]) - 0.25);
    };
    double h_order = std::log2(drift(T / 16) / drift(T / 32));
    char buf[120];
    std::snprintf(buf, sizeof buf, "self-convergence order %.2f, Hamiltonian drift order %.2f",
                  order, h_order);
    report("criterion 6e RK4 order and H conservation", order >= 3.7 && h_order >= 3.7, buf);
}

void criterion_6f() {
    const char* sources[] = {
        "x1^2",
        "exp(-100*(x1-0.5)^2)",
        "-x1^2*exp(-100*(x1-0.5)^2)",
        "-x1+cos(2*x2)",
        "-sqrt(1+4*sin(2*x2)^2)*exp(-100*(x1^2+x2^2))",
    };
    std::uint64_t s = 99;
    auto rnd = [&s] {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(s >> 11) / 9007199254740992.0;
    };
    double worst = 10.0;
    for (const char* src : sources) {
        Expr f = parse_expression(src);
        for (int axis = 0; axis < 2; ++axis) {
            Expr g = f.derivative(axis);
            for (int k = 0; k < 20; ++k) {
                double pt[2] = {0.35 + 0.3 * rnd(), 0.35 + 0.3 * rnd()};
                auto at = [&](double h) {
                    double q[2] = {pt[0], pt[1]};
                    q[axis] += h;
                    return f.eval(std::span<const double>(q, 2));
                };
                double gx = g.eval(std::span<const double>(pt, 2));
                double e1 = std::abs((at(2e-3) - at(-2e-3)) / 4e-3 - gx);
                double e2 = std::abs((at(1e-3) - at(-1e-3)) / 2e-3 - gx);
                if (e1 > 1e-11) worst = std::min(worst, std::log2(e1 / e2));
            }
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "worst measured order %.2f over the example expressions",
                  worst);
    report("criterion 6f symbolic-vs-FD derivative order", worst >= 1.9, buf);
}

void criterion_6g(int threads) {
    // d = 1: the two prefactor forms are algebraically identical
    SpeedField xsq = SpeedField::build(parse_expression("x1^2"), 1);
    Atom<1> a1, a2;
    a1.sign = a2.sign = +1;
    a1.q = a2.q = {0.5};
    a1.p = a2.p = {1.0};
    a1.Q = a2.Q = {0.5};
    a1.P = a2.P = {1.0};
    a1.var = a2.var = VariationalState<1>::identity();
    a1.a = a2.a = Complex(std::sqrt(2.0), 0.0);
    FlowSettings log_fs{1.0 / 2048, 0.5, 1e-6, PrefactorForm::LogDerivative};
    FlowSettings dir_fs{1.0 / 2048, 0.5, 1e-6, PrefactorForm::Direct};
    propagate<1>(std::span<Atom<1>>(&a1, 1), log_fs, xsq, 1);
    propagate<1>(std::span<Atom<1>>(&a2, 1), dir_fs, xsq, 1);
    double gap1 = std::abs(a1.a - a2.a) / std::abs(a2.a);
    char buf[200];
    std::snprintf(buf, sizeof buf, "relative prefactor gap %.2e", gap1);
    report("criterion 6g d=1 prefactor-form agreement", gap1 <= 1e-10, buf);

    // d = 2 with variable speed: the forms differ pointwise by the
    // under-the-integral symmetrization; compare reconstructed fields
    ExperimentConfig cfg;
    cfg.name = "form-comparison";
    cfg.d = 2;
    cfg.epsilons = {1.0 / 64};
    cfg.T = 0.3;
    cfg.lo = {-1.2, -1.2};
    cfg.hi = {1.2, 1.2};
    cfg.c_expr = "1+0.2*sin(x1)*cos(x2)";
    cfg.a0_re = "exp(-16*(x1^2+x2^2))";
    cfg.a0_im = "0";
    cfg.b0_re = "0";
    cfg.b0_im = "-(1+0.2*sin(x1)*cos(x2))*sqrt(1.25)*exp(-16*(x1^2+x2^2))";
    cfg.s0_expr = "x1+0.5*x2";
    cfg.mesh.dq = {0.125, 0.125};
    cfg.mesh.dp = {0.125, 0.125};
    cfg.mesh.dy = {0.125, 0.125};
    cfg.mesh.nq = {12, 12};
    cfg.mesh.np = {4, 4};
    cfg.mesh.q0 = {-11.0 / 16, -11.0 / 16};
    cfg.flow.dt = 1.0 / 256;
    cfg.recon.x0 = {-1.2, -1.2};
    cfg.recon.dx = {0.05, 0.05};
    cfg.recon.nx = {49, 49};
    cfg.methods = {"fga"};
    cfg.reference.method = "none";

    ExperimentConfig direct = cfg;
    direct.flow.form = PrefactorForm::Direct;
    FgaRun<2> f_log = run_fga<2>(cfg, cfg.epsilons[0], threads);
    FgaRun<2> f_dir = run_fga<2>(direct, cfg.epsilons[0], threads);
    double diff = 0, scale = 0;
    for (std::size_t n = 0; n < f_log.field.values.size(); ++n) {
        diff = std::max(diff, std::abs(f_log.field.values[n] - f_dir.field.values[n]));
        scale = std::max(scale, std::abs(f_log.field.values[n]));
    }
    double rel = diff / scale;
    std::snprintf(buf, sizeof buf,
                  "d=2 variable-c field gap %.3e relative (eps = %.3g); informational O(eps) gate",
                  rel, cfg.epsilons[0]);
    report("criterion 6g d=2 prefactor-form comparison", rel <= 1.0, buf);
}

// ---- criteria 1-3: the 1D accuracy table ----

void criteria_table1(int threads) {
    double t0 = now_s();
    ExperimentReport rep = run_comparison(example1_config(), threads).report;
    double elapsed = now_s() - t0;

    struct Cell {
        const char* method;
        double eps, linf, l2;
    };
    const Cell cells[] = {
        {"fga", 1.0 / 64, 1.12e-1, 6.05e-2},  {"fga", 1.0 / 128, 6.18e-2, 2.96e-2},
        {"fga", 1.0 / 256, 2.51e-2, 1.19e-2}, {"gbm", 1.0 / 64, 7.15e-1, 3.26e-1},
        {"gbm", 1.0 / 128, 5.08e-1, 2.28e-1}, {"gbm", 1.0 / 256, 3.36e-1, 1.47e-1},
    };

    for (const char* method : {"fga", "gbm"}) {
        bool pass = true;
        std::string detail;
        for (const Cell& c : cells) {
            if (std::string(c.method) != method) continue;
            const RunRecord* r = find_run(rep, method, c.eps);
            if (!r) {
                pass = false;
                detail += " missing run;";
                continue;
            }
            pass = pass && within(r->linf, c.linf, 0.25) && within(r->l2, c.l2, 0.25);
            detail += " linf " + cell(r->linf, c.linf) + ", l2 " + cell(r->l2, c.l2) + ";";
        }
        if (method == std::string("fga")) {
            detail += " elapsed " + std::to_string(elapsed) + " s";
            report("criterion 1 Table-1 FGA errors (25%)", pass, detail);
        } else {
            report("criterion 2 Table-1 GBM errors (25%)", pass, detail);
        }
    }

    bool have = rep.orders.count("fga") && rep.orders.count("gbm");
    bool pass = have;
    std::string detail;
    if (have) {
        const MethodOrders& f = rep.orders.at("fga");
        const MethodOrders& g = rep.orders.at("gbm");
        pass = std::abs(f.linf.slope - 1.08) <= 0.15 && std::abs(f.l2.slope - 1.17) <= 0.15 &&
               std::abs(g.linf.slope - 0.54) <= 0.15 && std::abs(g.l2.slope - 0.57) <= 0.15;
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "FGA %.3f/%.3f (target 1.08/1.17), GBM %.3f/%.3f (target 0.54/0.57)",
                      f.linf.slope, f.l2.slope, g.linf.slope, g.l2.slope);
        detail = buf;
    } else {
        detail = "missing order fits";
    }
    report("criterion 3 convergence orders (+-0.15)", pass, detail);
}

void criterion_4(int threads) {
    ExperimentReport rep = run_comparison(example2_config(), threads).report;
    const RunRecord* fga = find_run(rep, "fga", 1.0 / 256);
    const RunRecord* gbm = find_run(rep, "gbm", 1.0 / 256);
    bool pass = fga && gbm && fga->linf * 5.0 <= gbm->linf && gbm->min_im_M < 1.0;
    char buf[200];
    if (fga && gbm)
        std::snprintf(buf, sizeof buf,
                      "FGA linf %.3g vs GBM %.3g (ratio %.1f, need >= 5); Im M(T) = %.4f < 1",
                      fga->linf, gbm->linf, gbm->linf / fga->linf, gbm->min_im_M);
    else
        std::snprintf(buf, sizeof buf, "missing runs");
    report("criterion 4 beam-spreading comparison", pass, buf);
}

void criterion_5(int threads) {
    double t0 = now_s();
    ExperimentReport rep = run_comparison(example3_config(), threads).report;
    double elapsed = now_s() - t0;
    const RunRecord* a = find_run(rep, "fga", 1.0 / 128);
    const RunRecord* b = find_run(rep, "fga", 1.0 / 256);
    bool pass = a && b;
    std::string detail;
    if (pass) {
        double ratio = a->linf / b->linf;
        pass = within(a->linf, 1.98e-1, 0.30) && within(a->l2, 4.42e-2, 0.30) &&
               within(b->linf, 1.07e-1, 0.30) && within(b->l2, 2.20e-2, 0.30) &&
               ratio >= 1.5 && ratio <= 2.3;
        detail = "eps=1/128: linf " + cell(a->linf, 1.98e-1) + ", l2 " + cell(a->l2, 4.42e-2) +
                 "; eps=1/256: linf " + cell(b->linf, 1.07e-1) + ", l2 " +
                 cell(b->l2, 2.20e-2) + "; halving ratio " + std::to_string(ratio) +
                 " in [1.5, 2.3]; elapsed " + std::to_string(elapsed) + " s";
    } else {
        detail = "missing runs";
    }
    report("criterion 5 2D cusp caustic amplitudes (30%)", pass, detail);
}

}  // namespace

int main() {
    const int threads = default_threads();
    std::printf("acceptance suite, %d worker threads\n", threads);

    double t0 = now_s();
    criterion_6a(threads);
    criterion_6bc(threads);
    criterion_6d();
    criterion_6e();
    criterion_6f();
    criterion_6g(threads);
    std::printf("-- property suites (criterion 6) took %.1f s (budget 120 s)\n", now_s() - t0);

    criteria_table1(threads);
    criterion_4(threads);
    criterion_5(threads);

    std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "SUCCESS" : "FAILURE",
                g_failures);
    return g_failures == 0 ? 0 : 1;
}
