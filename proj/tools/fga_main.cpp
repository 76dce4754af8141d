// Command line driver: stage-wise pipeline commands plus the packaged
// benchmark experiments.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "fga/experiment.hpp"
#include "fga/parallel.hpp"

namespace {

using namespace fga;

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path);
    nlohmann::json j;
    is >> j;
    return config_from_json(j);
}

std::vector<double> select_eps(const ExperimentConfig& cfg, double eps_flag) {
    if (eps_flag <= 0.0) return cfg.epsilons;
    for (double e : cfg.epsilons)
        if (e == eps_flag) return {e};
    throw ConfigError("--eps value is not in the config epsilon list");
}

void print_summary(const ExperimentReport& report) {
    std::printf("%-10s %-12s %-14s %-14s %-9s %-7s\n", "method", "eps", "linf", "l2", "atoms",
                "dead");
    for (const RunRecord& r : report.runs)
        std::printf("%-10s %-12s %-14.6g %-14.6g %-9zu %-7zu\n", r.method.c_str(),
                    eps_label(r.eps).c_str(), r.linf, r.l2, r.atoms,
                    r.dead_momentum + r.dead_nonfinite + r.dead_singular);
    for (auto& [method, o] : report.orders)
        std::printf("%s convergence order: linf %.3f (R2 %.4f), l2 %.3f (R2 %.4f)\n",
                    method.c_str(), o.linf.slope, o.linf.r2, o.l2.slope, o.l2.r2);
    for (const std::string& w : report.warnings) std::printf("warning: %s\n", w.c_str());
}

void run_and_emit(const ExperimentConfig& cfg, int threads, const std::string& out_dir) {
    ComparisonResult result = run_comparison(cfg, threads, out_dir);
    emit_report(result, out_dir);
    print_summary(result.report);
    std::printf("report written to %s/report.json (%.1f s)\n", out_dir.c_str(),
                result.report.total_wall_ms / 1000.0);
}

template <int D>
void cmd_decompose(const ExperimentConfig& cfg, double eps, int threads,
                   const std::string& out_dir) {
    WaveProblem prob = build_problem(cfg, eps);
    MeshSpec<D> spec = resolve_mesh<D>(cfg, eps);
    auto [plus, minus] = split_branches<D>(prob);
    PhaseMesh<D> mesh = build_phase_mesh<D>(prob, spec);
    DecomposeResult<D> dec = init_atoms<D>(plus, minus, mesh, spec, eps, cfg.prune_rel, threads);
    std::string path = out_dir + "/atoms_" + eps_label(eps) + ".csv";
    write_atoms_csv<D>(dec.atoms, path);
    std::printf("eps=%s: %zu labels/branch, %zu excluded (|p|<p_min), %zu atoms (%zu pruned) -> %s\n",
                eps_label(eps).c_str(), dec.stats.labels_per_branch, dec.stats.excluded_pmin,
                dec.stats.atoms_created, dec.stats.pruned, path.c_str());
}

template <int D>
void cmd_propagate(const ExperimentConfig& cfg, double eps, int threads,
                   const std::string& atoms_path, const std::string& out_dir) {
    WaveProblem prob = build_problem(cfg, eps);
    std::vector<Atom<D>> atoms = read_atoms_csv<D>(atoms_path);
    FlowSettings fs{cfg.flow.dt, cfg.T, cfg.p_min, cfg.flow.form};
    FlowCensus census = propagate<D>(std::span<Atom<D>>(atoms), fs, prob.speed, threads);
    std::string path = out_dir + "/atoms_t_" + eps_label(eps) + ".csv";
    write_atoms_csv<D>(atoms, path);
    std::printf("eps=%s: propagated %zu atoms to T=%g (%zu alive, %zu dead) -> %s\n",
                eps_label(eps).c_str(), atoms.size(), cfg.T, census.alive, census.dead(),
                path.c_str());
}

template <int D>
void cmd_reconstruct(const ExperimentConfig& cfg, double eps, int threads,
                     const std::string& atoms_path, const std::string& out_dir) {
    std::vector<Atom<D>> atoms = read_atoms_csv<D>(atoms_path);
    double theta = cfg.recon.theta_factor * std::sqrt(eps);
    GridField<D> field = evaluate_field<D>(std::span<const Atom<D>>(atoms), recon_grid<D>(cfg),
                                           eps, theta, threads);
    std::string path = out_dir + "/field_fga_" + eps_label(eps) + ".csv";
    write_field_csv(AnyField::from<D>(field), path);
    std::printf("eps=%s: field on %zu nodes -> %s\n", eps_label(eps).c_str(),
                field.values.size(), path.c_str());
}

template <int D>
void cmd_reference(const ExperimentConfig& cfg, double eps, const std::string& out_dir) {
    ReferenceRecord rec;
    AnyField native;
    run_reference<D>(cfg, eps, rec, &native);
    std::string path = out_dir + "/field_" + rec.method + "_" + eps_label(eps) + ".csv";
    write_field_csv(native, path);
    std::printf("eps=%s: %s reference -> %s%s\n", eps_label(eps).c_str(), rec.method.c_str(),
                path.c_str(), rec.boundary_warning ? " (boundary warning!)" : "");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frozen Gaussian approximation for the high-frequency wave equation"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    int threads = fga::default_threads();
    double eps_flag = 0.0;
    std::string atoms_path;
    bool dump_config = false;

    app.add_option("--config", config_path, "experiment config (JSON)");
    app.add_option("--threads", threads, "worker threads");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--eps", eps_flag, "restrict to one epsilon from the config list");

    CLI::App* c_dec = app.add_subcommand("decompose", "steps 1-2: branch split + phase-space weights");
    CLI::App* c_prop = app.add_subcommand("propagate", "step 3: evolve atoms to T");
    c_prop->add_option("--atoms", atoms_path, "atoms CSV from decompose")->required();
    CLI::App* c_rec = app.add_subcommand("reconstruct", "step 4: evaluate the field on the grid");
    c_rec->add_option("--atoms", atoms_path, "atoms CSV from propagate")->required();
    CLI::App* c_ref = app.add_subcommand("reference", "run the configured reference solver");
    CLI::App* c_cmp = app.add_subcommand("compare", "full pipeline: all methods, errors, report");
    CLI::App* c_t1 = app.add_subcommand("table1", "reproduce the 1D accuracy table (FGA vs GBM)");
    CLI::App* c_e2 = app.add_subcommand("example2", "beam-spreading comparison at eps=1/256");
    CLI::App* c_e3 = app.add_subcommand("example3", "2D cusp caustic amplitude errors");
    for (CLI::App* c : {c_t1, c_e2, c_e3})
        c->add_flag("--dump-config", dump_config, "print the built-in config and exit");
    for (CLI::App* c : {c_dec, c_prop, c_rec, c_ref, c_cmp, c_t1, c_e2, c_e3}) c->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        std::filesystem::create_directories(out_dir);

        auto builtin = [&](fga::ExperimentConfig base, CLI::App* self) {
            if (dump_config && self->parsed()) {
                std::cout << fga::to_json(base).dump(2) << "\n";
                std::exit(0);
            }
            return config_path.empty() ? base : load_config(config_path);
        };

        if (c_t1->parsed()) {
            run_and_emit(builtin(fga::example1_config(), c_t1), threads, out_dir);
            return 0;
        }
        if (c_e2->parsed()) {
            run_and_emit(builtin(fga::example2_config(), c_e2), threads, out_dir);
            return 0;
        }
        if (c_e3->parsed()) {
            run_and_emit(builtin(fga::example3_config(), c_e3), threads, out_dir);
            return 0;
        }

        if (config_path.empty()) throw fga::ConfigError("--config is required");
        fga::ExperimentConfig cfg = load_config(config_path);

        if (c_cmp->parsed()) {
            run_and_emit(cfg, threads, out_dir);
            return 0;
        }
        for (double eps : select_eps(cfg, eps_flag)) {
            if (c_dec->parsed()) {
                cfg.d == 1 ? cmd_decompose<1>(cfg, eps, threads, out_dir)
                           : cmd_decompose<2>(cfg, eps, threads, out_dir);
            } else if (c_prop->parsed()) {
                cfg.d == 1 ? cmd_propagate<1>(cfg, eps, threads, atoms_path, out_dir)
                           : cmd_propagate<2>(cfg, eps, threads, atoms_path, out_dir);
            } else if (c_rec->parsed()) {
                cfg.d == 1 ? cmd_reconstruct<1>(cfg, eps, threads, atoms_path, out_dir)
                           : cmd_reconstruct<2>(cfg, eps, threads, atoms_path, out_dir);
            } else if (c_ref->parsed()) {
                cfg.d == 1 ? cmd_reference<1>(cfg, eps, out_dir)
                           : cmd_reference<2>(cfg, eps, out_dir);
            }
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
