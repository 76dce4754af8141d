#include "fga/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fga {

using nlohmann::json;

// ---- config ----

void ExperimentConfig::validate() const {
    if (d != 1 && d != 2) throw ConfigError("d must be 1 or 2");
    if (epsilons.empty()) throw ConfigError("epsilon list must be non-empty");
    for (double e : epsilons)
        if (!(e > 0.0)) throw ConfigError("every epsilon must be positive");
    if (methods.empty()) throw ConfigError("method set must be non-empty");
    for (const std::string& m : methods)
        if (m != "fga" && m != "gbm") throw ConfigError("unknown method '" + m + "'");
    if (T < 0.0) throw ConfigError("T must be nonnegative");
    for (int j = 0; j < d; ++j)
        if (!(hi[j] > lo[j])) throw ConfigError("domain box must have positive volume");
    if (std::find(methods.begin(), methods.end(), "gbm") != methods.end() && d != 1)
        throw ConfigError("the GBM comparison is one-dimensional");
}

MeshConfig ExperimentConfig::mesh_for(double eps) const {
    auto it = mesh_overrides.find(eps);
    return it == mesh_overrides.end() ? mesh : it->second;
}

namespace {

json mesh_to_json(const MeshConfig& m, int d) {
    json j;
    auto arr = [d](const std::array<double, 2>& v) {
        json a = json::array();
        for (int i = 0; i < d; ++i) a.push_back(v[i]);
        return a;
    };
    auto iarr = [d](const std::array<int, 2>& v) {
        json a = json::array();
        for (int i = 0; i < d; ++i) a.push_back(v[i]);
        return a;
    };
    j["dq"] = arr(m.dq);
    j["dp"] = arr(m.dp);
    j["dy"] = arr(m.dy);
    j["nq"] = iarr(m.nq);
    j["np"] = iarr(m.np);
    j["q0"] = arr(m.q0);
    j["theta_factor"] = m.theta_factor;
    j["mesh_k"] = m.mesh_k;
    return j;
}

MeshConfig mesh_from_json(const json& j, int d) {
    MeshConfig m;
    auto arr = [&](const char* key, std::array<double, 2>& v) {
        const json& a = j.at(key);
        for (int i = 0; i < d; ++i) v[i] = a.at(i).get<double>();
    };
    auto iarr = [&](const char* key, std::array<int, 2>& v) {
        const json& a = j.at(key);
        for (int i = 0; i < d; ++i) v[i] = a.at(i).get<int>();
    };
    arr("dq", m.dq);
    arr("dp", m.dp);
    arr("dy", m.dy);
    iarr("nq", m.nq);
    iarr("np", m.np);
    arr("q0", m.q0);
    m.theta_factor = j.value("theta_factor", 6.0);
    m.mesh_k = j.value("mesh_k", 1.0);
    return m;
}

}  // namespace

json to_json(const ExperimentConfig& cfg) {
    json j;
    j["name"] = cfg.name;
    j["d"] = cfg.d;
    j["epsilon"] = cfg.epsilons;
    j["T"] = cfg.T;
    json dom;
    dom["lo"] = json::array();
    dom["hi"] = json::array();
    for (int i = 0; i < cfg.d; ++i) {
        dom["lo"].push_back(cfg.lo[i]);
        dom["hi"].push_back(cfg.hi[i]);
    }
    j["domain"] = dom;
    j["speed"] = cfg.c_expr;
    j["A0"] = {{"re", cfg.a0_re}, {"im", cfg.a0_im}};
    j["B0"] = {{"re", cfg.b0_re}, {"im", cfg.b0_im}};
    j["S0"] = cfg.s0_expr;
    j["mesh"] = mesh_to_json(cfg.mesh, cfg.d);
    if (!cfg.mesh_overrides.empty()) {
        json ov = json::array();
        for (auto& [eps, m] : cfg.mesh_overrides) {
            json o = mesh_to_json(m, cfg.d);
            o["eps"] = eps;
            ov.push_back(o);
        }
        j["mesh_overrides"] = ov;
    }
    j["flow"] = {{"dt", cfg.flow.dt},
                 {"prefactor_form",
                  cfg.flow.form == PrefactorForm::LogDerivative ? "log-derivative" : "direct"}};
    json rec;
    rec["x0"] = json::array();
    rec["dx"] = json::array();
    rec["nx"] = json::array();
    for (int i = 0; i < cfg.d; ++i) {
        rec["x0"].push_back(cfg.recon.x0[i]);
        rec["dx"].push_back(cfg.recon.dx[i]);
        rec["nx"].push_back(cfg.recon.nx[i]);
    }
    rec["theta_factor"] = cfg.recon.theta_factor;
    j["recon"] = rec;
    j["reference"] = {{"method", cfg.reference.method},
                      {"dx", cfg.reference.dx},
                      {"dt", cfg.reference.dt},
                      {"nx", cfg.reference.nx}};
    j["gbm"] = {{"init", cfg.gbm.init},     {"y0_start", cfg.gbm.y0_start},
                {"dy0", cfg.gbm.dy0},       {"n", cfg.gbm.n},
                {"y_center", cfg.gbm.y_center}, {"theta", cfg.gbm.theta},
                {"dt", cfg.gbm.dt}};
    j["methods"] = cfg.methods;
    j["compare"] = cfg.compare == CompareMode::Amplitude ? "amplitude" : "complex";
    j["l2_weighted"] = cfg.l2_weighted;
    j["prune_rel"] = cfg.prune_rel;
    j["p_min"] = cfg.p_min;
    j["trajectories_stride"] = cfg.trajectories_stride;
    return j;
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig cfg;
    cfg.name = j.value("name", "experiment");
    cfg.d = j.at("d").get<int>();
    cfg.epsilons = j.at("epsilon").get<std::vector<double>>();
    cfg.T = j.at("T").get<double>();
    const json& dom = j.at("domain");
    for (int i = 0; i < cfg.d; ++i) {
        cfg.lo[i] = dom.at("lo").at(i).get<double>();
        cfg.hi[i] = dom.at("hi").at(i).get<double>();
    }
    cfg.c_expr = j.at("speed").get<std::string>();
    cfg.a0_re = j.at("A0").at("re").get<std::string>();
    cfg.a0_im = j.at("A0").at("im").get<std::string>();
    cfg.b0_re = j.at("B0").at("re").get<std::string>();
    cfg.b0_im = j.at("B0").at("im").get<std::string>();
    cfg.s0_expr = j.at("S0").get<std::string>();
    cfg.mesh = mesh_from_json(j.at("mesh"), cfg.d);
    if (j.contains("mesh_overrides"))
        for (const json& o : j.at("mesh_overrides"))
            cfg.mesh_overrides[o.at("eps").get<double>()] = mesh_from_json(o, cfg.d);
    const json& fl = j.at("flow");
    cfg.flow.dt = fl.at("dt").get<double>();
    std::string form = fl.value("prefactor_form", "log-derivative");
    if (form == "log-derivative") cfg.flow.form = PrefactorForm::LogDerivative;
    else if (form == "direct") cfg.flow.form = PrefactorForm::Direct;
    else throw ConfigError("prefactor_form must be 'log-derivative' or 'direct'");
    const json& rec = j.at("recon");
    for (int i = 0; i < cfg.d; ++i) {
        cfg.recon.x0[i] = rec.at("x0").at(i).get<double>();
        cfg.recon.dx[i] = rec.at("dx").at(i).get<double>();
        cfg.recon.nx[i] = rec.at("nx").at(i).get<int>();
    }
    cfg.recon.theta_factor = rec.value("theta_factor", 6.0);
    if (j.contains("reference")) {
        const json& rf = j.at("reference");
        cfg.reference.method = rf.value("method", "none");
        cfg.reference.dx = rf.value("dx", 0.0);
        cfg.reference.dt = rf.value("dt", 0.0);
        cfg.reference.nx = rf.value("nx", 0);
    }
    if (j.contains("gbm")) {
        const json& g = j.at("gbm");
        cfg.gbm.init = g.value("init", "multi");
        cfg.gbm.y0_start = g.value("y0_start", 0.0);
        cfg.gbm.dy0 = g.value("dy0", 0.0);
        cfg.gbm.n = g.value("n", 0);
        cfg.gbm.y_center = g.value("y_center", 0.0);
        cfg.gbm.theta = g.value("theta", 1e30);
        cfg.gbm.dt = g.value("dt", 0.0);
    }
    cfg.methods = j.value("methods", std::vector<std::string>{"fga"});
    std::string cmp = j.value("compare", "complex");
    if (cmp == "complex") cfg.compare = CompareMode::ComplexField;
    else if (cmp == "amplitude") cfg.compare = CompareMode::Amplitude;
    else throw ConfigError("compare must be 'complex' or 'amplitude'");
    cfg.l2_weighted = j.value("l2_weighted", true);
    cfg.prune_rel = j.value("prune_rel", 1e-12);
    cfg.p_min = j.value("p_min", 1e-6);
    cfg.trajectories_stride = j.value("trajectories_stride", 0);
    cfg.validate();
    return cfg;
}

// ---- packaged benchmark experiments ----

ExperimentConfig example1_config() {
    ExperimentConfig cfg;
    cfg.name = "example1";
    cfg.d = 1;
    cfg.epsilons = {1.0 / 64, 1.0 / 128, 1.0 / 256};
    cfg.T = 0.5;
    cfg.lo = {0.0, 0.0};
    cfg.hi = {2.0, 0.0};
    cfg.c_expr = "x1^2";
    cfg.a0_re = "exp(-100*(x1-0.5)^2)";
    cfg.a0_im = "0";
    cfg.b0_re = "0";
    cfg.b0_im = "-x1^2*exp(-100*(x1-0.5)^2)";
    cfg.s0_expr = "x1";

    MeshConfig fine;  // eps = 1/128, 1/256
    fine.dq = {1.0 / 128, 0};
    fine.dp = {1.0 / 128, 0};
    fine.dy = {1.0 / 128, 0};
    fine.nq = {128, 0};
    fine.np = {45, 0};
    fine.q0 = {0.5 - 127.0 / 256, 0};
    cfg.mesh = fine;
    MeshConfig coarse;  // eps = 1/64
    coarse.dq = {1.0 / 32, 0};
    coarse.dp = {1.0 / 32, 0};
    coarse.dy = {1.0 / 32, 0};
    coarse.nq = {32, 0};
    coarse.np = {33, 0};
    coarse.q0 = {0.5 - 31.0 / 64, 0};
    cfg.mesh_overrides[1.0 / 64] = coarse;

    cfg.flow.dt = 1.0 / 2048;  // 1/2^11
    cfg.recon.x0 = {0.0, 0};
    cfg.recon.dx = {1.0 / 4096, 0};  // 1/2^12
    cfg.recon.nx = {8193, 0};
    cfg.reference = {"fd", 1.0 / 4096, 1.0 / 262144, 0};  // dx = 1/2^12, dt = 1/2^18
    cfg.gbm.init = "multi";
    cfg.gbm.n = 0;  // reuse the FGA q-grid (delta y0 = dq, N_y0 = Nq)
    cfg.methods = {"fga", "gbm"};
    cfg.compare = CompareMode::ComplexField;
    return cfg;
}

ExperimentConfig example2_config() {
    ExperimentConfig cfg;
    cfg.name = "example2";
    cfg.d = 1;
    cfg.epsilons = {1.0 / 256};
    cfg.T = 1.0;
    cfg.lo = {0.0, 0.0};
    cfg.hi = {4.0, 0.0};
    cfg.c_expr = "x1^2";
    cfg.a0_re = "exp(-(x1-0.55)^2/(2*eps))";
    cfg.a0_im = "0";
    cfg.b0_re = "0";
    cfg.b0_im = "-x1^2*exp(-(x1-0.55)^2/(2*eps))";
    cfg.s0_expr = "x1";

    cfg.mesh.dq = {1.0 / 128, 0};
    cfg.mesh.dp = {1.0 / 128, 0};
    cfg.mesh.dy = {1.0 / 128, 0};
    cfg.mesh.nq = {128, 0};
    cfg.mesh.np = {45, 0};
    cfg.mesh.q0 = {0.55 - 127.0 / 256, 0};

    cfg.flow.dt = 1.0 / 1024;  // 1/2^10
    cfg.recon.x0 = {0.0, 0};
    cfg.recon.dx = {1.0 / 2048, 0};  // 1/2^11
    cfg.recon.nx = {8193, 0};
    cfg.reference = {"fd", 1.0 / 2048, 1.0 / 131072, 0};  // dx = 1/2^11, dt = 1/2^17
    cfg.gbm.init = "single";
    cfg.gbm.y_center = 0.55;
    cfg.methods = {"fga", "gbm"};
    cfg.compare = CompareMode::ComplexField;
    return cfg;
}

ExperimentConfig example3_config() {
    ExperimentConfig cfg;
    cfg.name = "example3";
    cfg.d = 2;
    cfg.epsilons = {1.0 / 128, 1.0 / 256};
    cfg.T = 1.0;
    cfg.lo = {-1.5, -1.0};
    cfg.hi = {0.5, 1.0};
    cfg.c_expr = "1";
    cfg.a0_re = "exp(-100*(x1^2+x2^2))";
    cfg.a0_im = "0";
    cfg.b0_re = "0";
    cfg.b0_im = "-sqrt(1+4*sin(2*x2)^2)*exp(-100*(x1^2+x2^2))";
    cfg.s0_expr = "-x1+cos(2*x2)";

    cfg.mesh.dq = {1.0 / 32, 1.0 / 32};
    cfg.mesh.dp = {1.0 / 32, 1.0 / 32};
    cfg.mesh.dy = {1.0 / 32, 1.0 / 32};
    cfg.mesh.nq = {32, 32};
    cfg.mesh.np = {8, 8};
    cfg.mesh.q0 = {-0.5 + 1.0 / 64, -0.5 + 1.0 / 64};

    cfg.flow.dt = 1.0 / 1024;  // same time step as example 2
    cfg.recon.x0 = {-1.5, -1.0};
    cfg.recon.dx = {1.0 / 128, 1.0 / 128};
    cfg.recon.nx = {256, 256};  // periodic comparison grid, right edge excluded
    cfg.reference = {"spectral", 0.0, 0.0, 1024};  // dx = 1/512 over the 2x2 box
    cfg.methods = {"fga"};
    cfg.compare = CompareMode::Amplitude;
    return cfg;
}

// ---- report json ----

namespace {

json run_to_json(const RunRecord& r) {
    json j;
    j["eps"] = r.eps;
    j["method"] = r.method;
    j["linf"] = r.linf;
    j["l2"] = r.l2;
    j["census"] = {{"labels_per_branch", r.labels},
                   {"excluded_pmin", r.excluded_pmin},
                   {"atoms", r.atoms},
                   {"pruned", r.pruned},
                   {"dead_momentum", r.dead_momentum},
                   {"dead_nonfinite", r.dead_nonfinite},
                   {"dead_singular", r.dead_singular},
                   {"alive", r.alive}};
    j["truncated_mass"] = r.truncated_mass;
    j["eval_failures"] = r.eval_failures;
    j["dropped_data_mass"] = r.dropped_data_mass;
    j["max_symplectic_residual"] = r.max_symplectic_residual;
    j["min_zzstar_eig"] = r.min_zzstar_eig;
    j["min_im_M"] = r.min_im_M;
    j["field_csv"] = r.field_csv;
    return j;
}

RunRecord run_from_json(const json& j) {
    RunRecord r;
    r.eps = j.at("eps").get<double>();
    r.method = j.at("method").get<std::string>();
    r.linf = j.at("linf").get<double>();
    r.l2 = j.at("l2").get<double>();
    const json& c = j.at("census");
    r.labels = c.at("labels_per_branch").get<std::size_t>();
    r.excluded_pmin = c.at("excluded_pmin").get<std::size_t>();
    r.atoms = c.at("atoms").get<std::size_t>();
    r.pruned = c.at("pruned").get<std::size_t>();
    r.dead_momentum = c.at("dead_momentum").get<std::size_t>();
    r.dead_nonfinite = c.at("dead_nonfinite").get<std::size_t>();
    r.dead_singular = c.at("dead_singular").get<std::size_t>();
    r.alive = c.at("alive").get<std::size_t>();
    r.truncated_mass = j.at("truncated_mass").get<double>();
    r.eval_failures = j.value("eval_failures", std::size_t{0});
    r.dropped_data_mass = j.value("dropped_data_mass", 0.0);
    r.max_symplectic_residual = j.at("max_symplectic_residual").get<double>();
    r.min_zzstar_eig = j.at("min_zzstar_eig").get<double>();
    r.min_im_M = j.at("min_im_M").get<double>();
    r.field_csv = j.at("field_csv").get<std::string>();
    return r;
}

json fit_to_json(const OrderFit& f) {
    return {{"slope", f.slope}, {"r2", f.r2}, {"residual", f.residual}, {"flagged", f.flagged}};
}

OrderFit fit_from_json(const json& j) {
    OrderFit f;
    f.slope = j.at("slope").get<double>();
    f.r2 = j.at("r2").get<double>();
    f.residual = j.at("residual").get<double>();
    f.flagged = j.at("flagged").get<bool>();
    return f;
}

}  // namespace

json report_to_json(const ExperimentReport& report) {
    json j;
    j["config"] = report.config_echo;
    j["runs"] = json::array();
    for (const RunRecord& r : report.runs) j["runs"].push_back(run_to_json(r));
    j["references"] = json::array();
    for (const ReferenceRecord& r : report.references)
        j["references"].push_back({{"eps", r.eps},
                                   {"method", r.method},
                                   {"boundary_warning", r.boundary_warning},
                                   {"field_csv", r.field_csv}});
    j["orders"] = json::object();
    for (auto& [method, o] : report.orders)
        j["orders"][method] = {{"linf", fit_to_json(o.linf)}, {"l2", fit_to_json(o.l2)}};
    j["warnings"] = report.warnings;
    // all wall-clock numbers live here so consumers can ignore or strip them
    json trun = json::array(), tref = json::array();
    for (const RunRecord& r : report.runs)
        trun.push_back({{"eps", r.eps}, {"method", r.method}, {"wall_ms", r.wall_ms}});
    for (const ReferenceRecord& r : report.references)
        tref.push_back({{"eps", r.eps}, {"method", r.method}, {"wall_ms", r.wall_ms}});
    j["timings"] = {{"total_ms", report.total_wall_ms}, {"runs", trun}, {"references", tref}};
    return j;
}

ExperimentReport report_from_json(const json& j) {
    ExperimentReport rep;
    rep.config_echo = j.at("config");
    for (const json& r : j.at("runs")) rep.runs.push_back(run_from_json(r));
    for (const json& r : j.at("references")) {
        ReferenceRecord rec;
        rec.eps = r.at("eps").get<double>();
        rec.method = r.at("method").get<std::string>();
        rec.boundary_warning = r.at("boundary_warning").get<bool>();
        rec.field_csv = r.at("field_csv").get<std::string>();
        rep.references.push_back(rec);
    }
    for (auto& [method, o] : j.at("orders").items()) {
        MethodOrders mo;
        mo.linf = fit_from_json(o.at("linf"));
        mo.l2 = fit_from_json(o.at("l2"));
        rep.orders[method] = mo;
    }
    rep.warnings = j.at("warnings").get<std::vector<std::string>>();
    if (j.contains("timings")) {
        const json& t = j.at("timings");
        rep.total_wall_ms = t.value("total_ms", 0.0);
        std::size_t i = 0;
        for (const json& r : t.value("runs", json::array())) {
            if (i < rep.runs.size()) rep.runs[i].wall_ms = r.value("wall_ms", 0.0);
            ++i;
        }
        i = 0;
        for (const json& r : t.value("references", json::array())) {
            if (i < rep.references.size()) rep.references[i].wall_ms = r.value("wall_ms", 0.0);
            ++i;
        }
    }
    return rep;
}

// ---- CSV ----

std::string eps_label(double eps) {
    std::ostringstream os;
    os.precision(12);
    os << eps;
    return os.str();
}

void write_field_csv(const AnyField& f, const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp) throw std::runtime_error("cannot open " + path + " for writing");
    std::fprintf(fp, f.d == 1 ? "x1,re,im,abs\n" : "x1,x2,re,im,abs\n");
    std::size_t total = 1;
    for (int j = 0; j < f.d; ++j) total *= static_cast<std::size_t>(f.nx[j]);
    for (std::size_t n = 0; n < total; ++n) {
        std::size_t rem = n;
        double x[2] = {0, 0};
        for (int j = f.d - 1; j >= 0; --j) {
            x[j] = f.x0[j] + static_cast<double>(rem % static_cast<std::size_t>(f.nx[j])) * f.dx[j];
            rem /= static_cast<std::size_t>(f.nx[j]);
        }
        const Complex& v = f.values[n];
        if (f.d == 1)
            std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g\n", x[0], v.real(), v.imag(), std::abs(v));
        else
            std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g,%.17g\n", x[0], x[1], v.real(), v.imag(),
                         std::abs(v));
    }
    std::fclose(fp);
}

void emit_report(const ComparisonResult& result, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    for (auto& [key, field] : result.fields)
        write_field_csv(field, out_dir + "/field_" + key + ".csv");
    std::ofstream os(out_dir + "/report.json");
    if (!os) throw std::runtime_error("cannot open " + out_dir + "/report.json for writing");
    os << report_to_json(result.report).dump(2) << "\n";
}

template <int D>
void write_atoms_csv(const std::vector<Atom<D>>& atoms, const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp) throw std::runtime_error("cannot open " + path + " for writing");
    if constexpr (D == 1)
        std::fprintf(fp, "sign,q1,p1,Q1,P1,a_re,a_im,psi_re,psi_im,measure,alive\n");
    else
        std::fprintf(fp, "sign,q1,q2,p1,p2,Q1,Q2,P1,P2,a_re,a_im,psi_re,psi_im,measure,alive\n");
    for (const Atom<D>& a : atoms) {
        std::fprintf(fp, "%d", a.sign);
        for (int j = 0; j < D; ++j) std::fprintf(fp, ",%.17g", a.q[j]);
        for (int j = 0; j < D; ++j) std::fprintf(fp, ",%.17g", a.p[j]);
        for (int j = 0; j < D; ++j) std::fprintf(fp, ",%.17g", a.Q[j]);
        for (int j = 0; j < D; ++j) std::fprintf(fp, ",%.17g", a.P[j]);
        std::fprintf(fp, ",%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", a.a.real(), a.a.imag(),
                     a.psi.real(), a.psi.imag(), a.measure, a.alive ? 1 : 0);
    }
    std::fclose(fp);
}

template <int D> std::vector<Atom<D>> read_atoms_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::string line;
    std::getline(is, line);  // header
    std::vector<Atom<D>> atoms;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> vals;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
        const std::size_t expect = 1 + 4 * D + 5 + 1;
        if (vals.size() != expect)
            throw std::runtime_error("malformed atom row in " + path);
        Atom<D> a;
        std::size_t k = 0;
        a.sign = static_cast<int>(vals[k++]);
        for (int j = 0; j < D; ++j) a.q[j] = vals[k++];
        for (int j = 0; j < D; ++j) a.p[j] = vals[k++];
        for (int j = 0; j < D; ++j) a.Q[j] = vals[k++];
        for (int j = 0; j < D; ++j) a.P[j] = vals[k++];
        a.a = Complex(vals[k], vals[k + 1]);
        k += 2;
        a.psi = Complex(vals[k], vals[k + 1]);
        k += 2;
        a.measure = vals[k++];
        a.alive = vals[k++] != 0.0;
        a.var = VariationalState<D>::identity();
        atoms.push_back(a);
    }
    return atoms;
}

template void write_atoms_csv<1>(const std::vector<Atom<1>>&, const std::string&);
template void write_atoms_csv<2>(const std::vector<Atom<2>>&, const std::string&);
template std::vector<Atom<1>> read_atoms_csv<1>(const std::string&);
template std::vector<Atom<2>> read_atoms_csv<2>(const std::string&);

}  // namespace fga
