#include <chrono>
#include <cstdio>

#include "fga/experiment.hpp"

namespace fga {

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

std::map<std::string, double> expr_constants(double eps) {
    return {{"eps", eps}, {"pi", M_PI}};
}

}  // namespace

WaveProblem build_problem(const ExperimentConfig& cfg, double eps) {
    auto consts = expr_constants(eps);
    WaveProblem prob;
    prob.d = cfg.d;
    prob.epsilon = eps;
    prob.box.d = cfg.d;
    prob.box.lo = cfg.lo;
    prob.box.hi = cfg.hi;
    prob.speed = SpeedField::build(parse_expression(cfg.c_expr, consts), cfg.d);
    prob.s0 = DifferentiableScalar::build(parse_expression(cfg.s0_expr, consts), cfg.d);
    prob.a0_re = parse_expression(cfg.a0_re, consts);
    prob.a0_im = parse_expression(cfg.a0_im, consts);
    prob.b0_re = parse_expression(cfg.b0_re, consts);
    prob.b0_im = parse_expression(cfg.b0_im, consts);
    prob.p_min = cfg.p_min;
    prob.validate();
    return prob;
}

template <int D> MeshSpec<D> resolve_mesh(const ExperimentConfig& cfg, double eps) {
    MeshConfig mc = cfg.mesh_for(eps);
    MeshSpec<D> spec;
    for (int j = 0; j < D; ++j) {
        spec.dq[j] = mc.dq[j];
        spec.dp[j] = mc.dp[j];
        spec.dy[j] = mc.dy[j];
        spec.nq[j] = mc.nq[j];
        spec.np[j] = mc.np[j];
        spec.q0[j] = mc.q0[j];
        spec.dx[j] = cfg.recon.dx[j];
        spec.nx[j] = cfg.recon.nx[j];
        spec.x0[j] = cfg.recon.x0[j];
    }
    spec.theta = mc.theta_factor * std::sqrt(eps);
    spec.derive_y_grid();
    spec.validate();
    return spec;
}

template <int D> Grid<D> recon_grid(const ExperimentConfig& cfg) {
    Grid<D> g;
    for (int j = 0; j < D; ++j) {
        g.x0[j] = cfg.recon.x0[j];
        g.dx[j] = cfg.recon.dx[j];
        g.nx[j] = cfg.recon.nx[j];
    }
    return g;
}

template <int D>
FgaRun<D> run_fga(const ExperimentConfig& cfg, double eps, int threads,
                  const std::string& trajectories_csv) {
    WaveProblem prob = build_problem(cfg, eps);
    MeshSpec<D> spec = resolve_mesh<D>(cfg, eps);

    double t0 = now_ms();
    auto [plus, minus] = split_branches<D>(prob);
    PhaseMesh<D> mesh = build_phase_mesh<D>(prob, spec);
    FgaRun<D> out;
    out.decomposed = init_atoms<D>(plus, minus, mesh, spec, eps, cfg.prune_rel, threads);
    out.decompose_ms = now_ms() - t0;

    FlowSettings fs;
    fs.dt = cfg.flow.dt;
    fs.t_final = cfg.T;
    fs.p_min = cfg.p_min;
    fs.form = cfg.flow.form;

    std::function<void(double, std::span<const Atom<D>>)> monitor;
    std::FILE* traj = nullptr;
    if (cfg.trajectories_stride > 0 && !trajectories_csv.empty()) {
        traj = std::fopen(trajectories_csv.c_str(), "w");
        if (!traj) throw std::runtime_error("cannot open " + trajectories_csv);
        if constexpr (D == 1) std::fprintf(traj, "atom,t,sign,Q1,P1,a_re,a_im\n");
        else std::fprintf(traj, "atom,t,sign,Q1,Q2,P1,P2,a_re,a_im\n");
        monitor = [traj](double t, std::span<const Atom<D>> atoms) {
            for (std::size_t i = 0; i < atoms.size(); ++i) {
                const Atom<D>& a = atoms[i];
                if (!a.alive) continue;
                std::fprintf(traj, "%zu,%.17g,%d", i, t, a.sign);
                for (int j = 0; j < D; ++j) std::fprintf(traj, ",%.17g", a.Q[j]);
                for (int j = 0; j < D; ++j) std::fprintf(traj, ",%.17g", a.P[j]);
                std::fprintf(traj, ",%.17g,%.17g\n", a.a.real(), a.a.imag());
            }
        };
    }

    t0 = now_ms();
    out.census = propagate<D>(std::span<Atom<D>>(out.decomposed.atoms), fs, prob.speed, threads,
                              monitor,
                              cfg.trajectories_stride > 0
                                  ? static_cast<std::size_t>(cfg.trajectories_stride)
                                  : 1);
    out.flow_ms = now_ms() - t0;
    if (traj) std::fclose(traj);

    out.max_symplectic_residual = 0.0;
    out.min_zzstar_eig = out.decomposed.atoms.empty() ? 2.0 : 1e300;
    for (const Atom<D>& a : out.decomposed.atoms) {
        if (!a.alive) continue;
        out.max_symplectic_residual =
            std::max(out.max_symplectic_residual, a.var.symplectic_residual());
        out.min_zzstar_eig = std::min(out.min_zzstar_eig, a.var.min_eig_zzstar());
    }
    if (out.min_zzstar_eig == 1e300) out.min_zzstar_eig = 0.0;

    t0 = now_ms();
    double theta_recon = cfg.recon.theta_factor * std::sqrt(eps);
    out.field = evaluate_field<D>(std::span<const Atom<D>>(out.decomposed.atoms),
                                  recon_grid<D>(cfg), eps, theta_recon, threads);
    out.recon_ms = now_ms() - t0;
    return out;
}

GbmRun run_gbm(const ExperimentConfig& cfg, double eps) {
    if (cfg.d != 1) throw ConfigError("the GBM comparison is one-dimensional");
    double t0 = now_ms();
    WaveProblem prob = build_problem(cfg, eps);
    GbmRun out;

    std::vector<Beam> beams;
    if (cfg.gbm.init == "single") {
        beams.push_back(init_beam_single(prob, cfg.gbm.y_center));
        out.dy0 = std::sqrt(2.0 * M_PI * eps);  // printed formula then reproduces the beam
    } else if (cfg.gbm.init == "multi") {
        if (cfg.gbm.n > 0) {
            beams = init_beams_multi(prob, cfg.gbm.y0_start, cfg.gbm.dy0, cfg.gbm.n);
            out.dy0 = cfg.gbm.dy0;
        } else {
            MeshConfig mc = cfg.mesh_for(eps);  // beams on the FGA q-grid
            beams = init_beams_multi(prob, mc.q0[0], mc.dq[0], mc.nq[0]);
            out.dy0 = mc.dq[0];
        }
    } else {
        throw ConfigError("gbm.init must be 'multi' or 'single'");
    }

    GbmSettings gs;
    gs.dt = cfg.gbm.dt > 0 ? cfg.gbm.dt : cfg.flow.dt;
    gs.t_final = cfg.T;
    gs.p_min = cfg.p_min;
    out.census = gbm_propagate(beams, gs, prob.speed);
    out.field = gbm_reconstruct(beams, recon_grid<1>(cfg), eps, cfg.gbm.theta, out.dy0);
    out.beams = std::move(beams);
    out.wall_ms = now_ms() - t0;
    return out;
}

namespace {

// Samples `native` at the nodes of `target`; node coordinates must land on
// native lattice points (up to 1e-9 relative).
template <int D>
GridField<D> subsample(const GridField<D>& native, const Grid<D>& target) {
    if (native.grid.same_as(target)) return native;
    GridField<D> out = GridField<D>::zeros(target);
    std::array<std::size_t, D> stridev{};
    std::size_t s = 1;
    for (int j = D - 1; j >= 0; --j) {
        stridev[j] = s;
        s *= static_cast<std::size_t>(native.grid.nx[j]);
    }
    for (std::size_t n = 0; n < out.values.size(); ++n) {
        Vec<D> x = target.node(n);
        std::size_t src = 0;
        for (int j = 0; j < D; ++j) {
            double t = (x[j] - native.grid.x0[j]) / native.grid.dx[j];
            long idx = std::lround(t);
            if (idx < 0 || idx >= native.grid.nx[j] ||
                std::abs(t - static_cast<double>(idx)) > 1e-9)
                throw GridMismatchError(
                    "comparison grid node does not lie on the reference lattice");
            src += static_cast<std::size_t>(idx) * stridev[j];
        }
        out.values[n] = native.values[src];
    }
    return out;
}

}  // namespace

template <int D>
GridField<D> run_reference(const ExperimentConfig& cfg, double eps, ReferenceRecord& rec,
                           AnyField* native) {
    WaveProblem prob = build_problem(cfg, eps);
    rec.eps = eps;
    rec.method = cfg.reference.method;
    double t0 = now_ms();

    if (cfg.reference.method == "fd") {
        if constexpr (D != 1) throw ConfigError("fd reference is one-dimensional");
        else {
            Fd1dOptions opt;
            opt.dx = cfg.reference.dx;
            opt.dt = cfg.reference.dt;
            opt.t_final = cfg.T;
            Fd1dResult res = fd_wave_1d(
                prob.speed, prob.box, [&](double x) { return prob.u0<1>(Vec<1>{x}); },
                [&](double x) { return prob.dtu0<1>(Vec<1>{x}); }, opt);
            rec.boundary_warning = res.boundary_warning;
            rec.wall_ms = now_ms() - t0;
            if (native) *native = AnyField::from<1>(res.u);
            return subsample<1>(res.u, recon_grid<1>(cfg));
        }
    }
    if (cfg.reference.method == "spectral") {
        if constexpr (D != 2) throw ConfigError("the spectral reference is two-dimensional");
        else {
            Grid<2> g;
            for (int j = 0; j < 2; ++j) {
                g.x0[j] = cfg.lo[j];
                g.nx[j] = cfg.reference.nx;
                g.dx[j] = (cfg.hi[j] - cfg.lo[j]) / cfg.reference.nx;
            }
            Spectral2dResult res = spectral_wave_2d(
                prob.speed, g,
                [&](double x1, double x2) { return prob.u0<2>(Vec<2>{x1, x2}); },
                [&](double x1, double x2) { return prob.dtu0<2>(Vec<2>{x1, x2}); }, cfg.T);
            rec.wall_ms = now_ms() - t0;
            if (native) *native = AnyField::from<2>(res.u);
            return subsample<2>(res.u, recon_grid<2>(cfg));
        }
    }
    throw ConfigError("no reference method configured (need 'fd' or 'spectral')");
}

namespace {

template <int D>
ComparisonResult run_comparison_impl(const ExperimentConfig& cfg, int threads,
                                     const std::string& traj_dir) {
    double t_start = now_ms();
    ComparisonResult out;
    out.report.config_echo = to_json(cfg);

    bool want_fga = false, want_gbm = false;
    for (const std::string& m : cfg.methods) {
        want_fga |= m == "fga";
        want_gbm |= m == "gbm";
    }

    std::map<std::string, std::vector<std::pair<double, double>>> linf_series, l2_series;

    for (double eps : cfg.epsilons) {
        for (const std::string& w :
             resolve_mesh<D>(cfg, eps).size_warnings(eps, cfg.mesh_for(eps).mesh_k))
            out.report.warnings.push_back("eps=" + eps_label(eps) + ": " + w);

        ReferenceRecord ref_rec;
        AnyField ref_native;
        GridField<D> ref = run_reference<D>(cfg, eps, ref_rec, &ref_native);
        ref_rec.field_csv = "field_" + ref_rec.method + "_" + eps_label(eps) + ".csv";
        out.fields[ref_rec.method + "_" + eps_label(eps)] = ref_native;
        if (ref_rec.boundary_warning)
            out.report.warnings.push_back("eps=" + eps_label(eps) +
                                          ": reference solution active near the domain "
                                          "boundary; enlarge the box");
        out.report.references.push_back(ref_rec);

        if (want_fga) {
            double t0 = now_ms();
            std::string traj_csv;
            if (!traj_dir.empty() && cfg.trajectories_stride > 0)
                traj_csv = traj_dir + "/trajectories_" + eps_label(eps) + ".csv";
            FgaRun<D> run = run_fga<D>(cfg, eps, threads, traj_csv);
            RunRecord r;
            r.eps = eps;
            r.method = "fga";
            ErrorNorms norms = error_norms<D>(run.field, ref, cfg.compare, cfg.l2_weighted);
            r.linf = norms.linf;
            r.l2 = norms.l2;
            r.labels = run.decomposed.stats.labels_per_branch;
            r.excluded_pmin = run.decomposed.stats.excluded_pmin;
            r.atoms = run.decomposed.stats.atoms_created;
            r.pruned = run.decomposed.stats.pruned;
            r.truncated_mass = run.decomposed.stats.truncated_mass;
            r.eval_failures = run.decomposed.stats.eval_failures;
            r.dropped_data_mass = run.decomposed.stats.dropped_data_mass;
            if (r.eval_failures > 0)
                out.report.warnings.push_back(
                    "eps=" + eps_label(eps) + ": " + std::to_string(r.eval_failures) +
                    " y-lattice points zeroed (branch data not evaluable there; dropped "
                    "|A0|+|B0| mass " + std::to_string(r.dropped_data_mass) + ")");
            r.dead_momentum = run.census.dead_momentum;
            r.dead_nonfinite = run.census.dead_nonfinite;
            r.dead_singular = run.census.dead_singular;
            r.alive = run.census.alive;
            r.max_symplectic_residual = run.max_symplectic_residual;
            r.min_zzstar_eig = run.min_zzstar_eig;
            r.wall_ms = now_ms() - t0;
            r.field_csv = "field_fga_" + eps_label(eps) + ".csv";
            out.fields["fga_" + eps_label(eps)] = AnyField::from<D>(run.field);
            out.report.runs.push_back(r);
            if (r.linf > 0 && r.l2 > 0) {
                linf_series["fga"].push_back({eps, r.linf});
                l2_series["fga"].push_back({eps, r.l2});
            }
            if (run.census.dead() > 0)
                out.report.warnings.push_back(
                    "eps=" + eps_label(eps) + ": " + std::to_string(run.census.dead()) +
                    " atoms died during propagation and were excluded");
        }
        if (want_gbm) {
            if constexpr (D == 1) {
                GbmRun run = run_gbm(cfg, eps);
                RunRecord r;
                r.eps = eps;
                r.method = "gbm";
                ErrorNorms norms = error_norms<1>(run.field, ref, cfg.compare, cfg.l2_weighted);
                r.linf = norms.linf;
                r.l2 = norms.l2;
                r.atoms = run.beams.size();
                r.alive = run.census.alive;
                r.min_im_M = run.census.min_im_M;
                r.wall_ms = run.wall_ms;
                r.field_csv = "field_gbm_" + eps_label(eps) + ".csv";
                out.fields["gbm_" + eps_label(eps)] = AnyField::from<1>(run.field);
                out.report.runs.push_back(r);
                if (run.census.im_M_loss)
                    out.report.warnings.push_back("eps=" + eps_label(eps) +
                                                  ": GBM lost Im M > 0 (beam fully spread)");
                if (r.linf > 0 && r.l2 > 0) {
                    linf_series["gbm"].push_back({eps, r.linf});
                    l2_series["gbm"].push_back({eps, r.l2});
                }
            }
        }
    }

    for (auto& [method, series] : linf_series) {
        if (series.size() < 2) continue;
        MethodOrders mo;
        mo.linf = convergence_order(series);
        mo.l2 = convergence_order(l2_series[method]);
        if (mo.linf.flagged || mo.l2.flagged)
            out.report.warnings.push_back("order fit for " + method +
                                          " has R^2 < 0.95; slope unreliable");
        out.report.orders[method] = mo;
    }
    out.report.total_wall_ms = now_ms() - t_start;
    return out;
}

}  // namespace

ComparisonResult run_comparison(const ExperimentConfig& cfg, int threads,
                                const std::string& traj_dir) {
    cfg.validate();
    return cfg.d == 1 ? run_comparison_impl<1>(cfg, threads, traj_dir)
                      : run_comparison_impl<2>(cfg, threads, traj_dir);
}

template MeshSpec<1> resolve_mesh<1>(const ExperimentConfig&, double);
template MeshSpec<2> resolve_mesh<2>(const ExperimentConfig&, double);
template Grid<1> recon_grid<1>(const ExperimentConfig&);
template Grid<2> recon_grid<2>(const ExperimentConfig&);
template FgaRun<1> run_fga<1>(const ExperimentConfig&, double, int, const std::string&);
template FgaRun<2> run_fga<2>(const ExperimentConfig&, double, int, const std::string&);
template GridField<1> run_reference<1>(const ExperimentConfig&, double, ReferenceRecord&,
                                       AnyField*);
template GridField<2> run_reference<2>(const ExperimentConfig&, double, ReferenceRecord&,
                                       AnyField*);

}  // namespace fga
