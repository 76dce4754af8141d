#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fga/decompose.hpp"
#include "fga/fd1d.hpp"
#include "fga/flow.hpp"
#include "fga/gbm.hpp"
#include "fga/norms.hpp"
#include "fga/reconstruct.hpp"
#include "fga/scene.hpp"
#include "fga/spectral2d.hpp"

namespace fga {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- experiment configuration ----

struct MeshConfig {
    std::array<double, 2> dq{}, dp{}, dy{};
    std::array<int, 2> nq{}, np{};
    std::array<double, 2> q0{};
    double theta_factor = 6.0;  // theta = theta_factor * sqrt(eps)
    double mesh_k = 1.0;        // warn when dq/dp/dy exceed mesh_k * sqrt(eps)
};

struct FlowConfig {
    double dt = 0.0;
    PrefactorForm form = PrefactorForm::LogDerivative;
};

struct ReconConfig {
    std::array<double, 2> x0{}, dx{};
    std::array<int, 2> nx{};
    double theta_factor = 6.0;
};

struct ReferenceConfig {
    std::string method;  // "fd" | "spectral" | "none"
    double dx = 0.0;     // fd
    double dt = 0.0;     // fd
    int nx = 0;          // spectral, per axis (power of two)
};

struct GbmConfig {
    std::string init = "multi";  // "multi" | "single"
    double y0_start = 0.0;       // multi; n == 0 means reuse the FGA q-grid
    double dy0 = 0.0;
    int n = 0;
    double y_center = 0.0;       // single; dy0 = sqrt(2 pi eps)
    double theta = 1e30;         // no truncation unless configured
    double dt = 0.0;             // 0 means flow.dt
};

struct ExperimentConfig {
    std::string name;
    int d = 1;
    std::vector<double> epsilons;
    double T = 0.0;
    std::array<double, 2> lo{}, hi{};
    std::string c_expr, a0_re, a0_im, b0_re, b0_im, s0_expr;
    MeshConfig mesh;
    std::map<double, MeshConfig> mesh_overrides;  // keyed by eps
    FlowConfig flow;
    ReconConfig recon;
    ReferenceConfig reference;
    GbmConfig gbm;
    std::vector<std::string> methods{"fga"};
    CompareMode compare = CompareMode::ComplexField;
    bool l2_weighted = true;
    double prune_rel = 1e-12;
    double p_min = 1e-6;
    int trajectories_stride = 0;  // > 0: sample per-atom (Q, P, a) every s steps

    void validate() const;
    MeshConfig mesh_for(double eps) const;
};

nlohmann::json to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);

// packaged benchmark experiments
ExperimentConfig example1_config();
ExperimentConfig example2_config();
ExperimentConfig example3_config();

// ---- runtime products ----

// d-erased field, used for CSV output and the report
struct AnyField {
    int d = 1;
    std::array<double, 2> x0{}, dx{};
    std::array<int, 2> nx{};
    std::vector<Complex> values;

    template <int D> static AnyField from(const GridField<D>& f) {
        AnyField a;
        a.d = D;
        for (int j = 0; j < D; ++j) {
            a.x0[j] = f.grid.x0[j];
            a.dx[j] = f.grid.dx[j];
            a.nx[j] = f.grid.nx[j];
        }
        a.values = f.values;
        return a;
    }
    template <int D> GridField<D> typed() const {
        Grid<D> g;
        for (int j = 0; j < D; ++j) {
            g.x0[j] = x0[j];
            g.dx[j] = dx[j];
            g.nx[j] = nx[j];
        }
        return {g, values};
    }
};

struct RunRecord {
    double eps = 0.0;
    std::string method;
    double linf = 0.0, l2 = 0.0;
    // census
    std::size_t labels = 0, excluded_pmin = 0, atoms = 0, pruned = 0;
    std::size_t dead_momentum = 0, dead_nonfinite = 0, dead_singular = 0, alive = 0;
    double truncated_mass = 0.0;
    std::size_t eval_failures = 0;
    double dropped_data_mass = 0.0;
    double max_symplectic_residual = 0.0;  // at T, over alive atoms
    double min_zzstar_eig = 0.0;           // at T, over alive atoms
    double min_im_M = 0.0;                 // gbm
    double wall_ms = 0.0;
    std::string field_csv;
};

struct ReferenceRecord {
    double eps = 0.0;
    std::string method;
    double wall_ms = 0.0;
    bool boundary_warning = false;
    std::string field_csv;
};

struct MethodOrders {
    OrderFit linf, l2;
};

struct ExperimentReport {
    nlohmann::json config_echo;
    std::vector<RunRecord> runs;
    std::vector<ReferenceRecord> references;
    std::map<std::string, MethodOrders> orders;  // per method, when >= 2 epsilons
    std::vector<std::string> warnings;
    double total_wall_ms = 0.0;
};

nlohmann::json report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::json& j);

// ---- pipeline ----

WaveProblem build_problem(const ExperimentConfig& cfg, double eps);

template <int D> MeshSpec<D> resolve_mesh(const ExperimentConfig& cfg, double eps);
template <int D> Grid<D> recon_grid(const ExperimentConfig& cfg);

template <int D> struct FgaRun {
    DecomposeResult<D> decomposed;
    FlowCensus census;
    GridField<D> field;
    double max_symplectic_residual = 0.0;
    double min_zzstar_eig = 0.0;
    double decompose_ms = 0.0, flow_ms = 0.0, recon_ms = 0.0;
};

// Steps 1-4 for one epsilon; deterministic for any thread count.
template <int D>
FgaRun<D> run_fga(const ExperimentConfig& cfg, double eps, int threads,
                  const std::string& trajectories_csv = "");

struct GbmRun {
    std::vector<Beam> beams;
    GbmCensus census;
    GridField<1> field;
    double dy0 = 0.0;
    double wall_ms = 0.0;
};
GbmRun run_gbm(const ExperimentConfig& cfg, double eps);

// Reference solution sampled on the comparison grid (FD directly; the 2D
// spectral solution is computed on its own finer grid and subsampled).
template <int D>
GridField<D> run_reference(const ExperimentConfig& cfg, double eps, ReferenceRecord& rec,
                           AnyField* native = nullptr);

struct ComparisonResult {
    ExperimentReport report;
    std::map<std::string, AnyField> fields;  // key = "<method>_<eps>"
};

// traj_dir, when non-empty and cfg.trajectories_stride > 0, receives one
// trajectories_<eps>.csv per FGA run (per-atom Q, P, a samples).
ComparisonResult run_comparison(const ExperimentConfig& cfg, int threads,
                                const std::string& traj_dir = "");

std::string eps_label(double eps);

// report.json + one CSV per stored field, under out_dir
void emit_report(const ComparisonResult& result, const std::string& out_dir);

// GridField CSV: one row per node, columns = coordinates, re, im, abs
void write_field_csv(const AnyField& f, const std::string& path);

// atoms CSV for the stage-wise CLI
template <int D> void write_atoms_csv(const std::vector<Atom<D>>& atoms, const std::string& path);
template <int D> std::vector<Atom<D>> read_atoms_csv(const std::string& path);

}  // namespace fga
