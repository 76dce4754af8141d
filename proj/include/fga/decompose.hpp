#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fga/atom.hpp"
#include "fga/parallel.hpp"
#include "fga/scene.hpp"

namespace fga {

struct MeshError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Phase-space and reconstruction meshes. Counts are per axis: the q-grid
// has nq[j] points per axis starting at q0, the p-grid runs l = -np..np
// per axis around grad S0(q), the y-grid has ny[j] points from y0.
template <int D> struct MeshSpec {
    Vec<D> dq{}, dp{}, dy{}, dx{};
    std::array<int, D> nq{}, np{}, ny{}, nx{};
    Vec<D> q0{}, y0{}, x0{};
    double theta = 0.0;

    void validate() const {
        for (int j = 0; j < D; ++j) {
            if (!(dq[j] > 0 && dp[j] > 0 && dy[j] > 0))
                throw MeshError("mesh sizes must be positive");
            if (nq[j] < 1 || np[j] < 0 || ny[j] < 1) throw MeshError("mesh counts out of range");
        }
        if (!(theta > 0)) throw MeshError("cutoff radius theta must be positive");
    }

    // dq, dp, dy should be O(sqrt(eps)); returns warnings for sizes above
    // k_factor * sqrt(eps).
    std::vector<std::string> size_warnings(double eps, double k_factor) const {
        std::vector<std::string> w;
        double bound = k_factor * std::sqrt(eps);
        auto check = [&](const char* name, const Vec<D>& v) {
            for (int j = 0; j < D; ++j)
                if (v[j] > bound)
                    w.push_back(std::string(name) + " = " + std::to_string(v[j]) +
                                " exceeds " + std::to_string(k_factor) + "*sqrt(eps) = " +
                                std::to_string(bound));
        };
        check("dq", dq);
        check("dp", dp);
        check("dy", dy);
        return w;
    }

    double cell_measure() const {
        double m = 1;
        for (int j = 0; j < D; ++j) m *= dq[j] * dp[j];
        return m;
    }
    double dy_measure() const {
        double m = 1;
        for (int j = 0; j < D; ++j) m *= dy[j];
        return m;
    }

    // Derives the y-grid as the q-grid bounding box inflated by theta.
    void derive_y_grid() {
        for (int j = 0; j < D; ++j) {
            int pad = static_cast<int>(std::ceil(theta / dy[j])) + 1;
            y0[j] = q0[j] - pad * dy[j];
            double qmax = q0[j] + (nq[j] - 1) * dq[j];
            ny[j] = static_cast<int>(std::ceil((qmax + pad * dy[j] - y0[j]) / dy[j])) + 1;
        }
    }
};

template <int D> struct PhaseLabel {
    Vec<D> q{}, p{};
};

template <int D> struct PhaseMesh {
    std::vector<PhaseLabel<D>> labels;  // lexicographic in (k, l)
    std::size_t excluded_pmin = 0;
};

// q^k lattice from q0, p^{k,l} = grad S0(q^k) + l*dp, l in {-np..np}^D;
// labels with |p| < p_min are excluded and counted.
template <int D>
PhaseMesh<D> build_phase_mesh(const WaveProblem& prob, const MeshSpec<D>& spec) {
    spec.validate();
    PhaseMesh<D> mesh;
    std::array<int, D> k{};
    auto q_of = [&](const std::array<int, D>& idx) {
        Vec<D> q;
        for (int j = 0; j < D; ++j) q[j] = spec.q0[j] + idx[j] * spec.dq[j];
        return q;
    };
    std::size_t total_q = 1;
    for (int j = 0; j < D; ++j) total_q *= static_cast<std::size_t>(spec.nq[j]);
    for (std::size_t flat = 0; flat < total_q; ++flat) {
        std::size_t rem = flat;
        for (int j = D - 1; j >= 0; --j) {
            k[j] = static_cast<int>(rem % static_cast<std::size_t>(spec.nq[j]));
            rem /= static_cast<std::size_t>(spec.nq[j]);
        }
        Vec<D> q = q_of(k);
        ScalarEval<D> s = prob.s0.eval<D>(q);
        std::array<int, D> l{};
        for (int j = 0; j < D; ++j) l[j] = -spec.np[j];
        for (;;) {
            Vec<D> p;
            for (int j = 0; j < D; ++j) p[j] = s.grad[j] + l[j] * spec.dp[j];
            if (norm<D>(p) >= prob.p_min) mesh.labels.push_back({q, p});
            else ++mesh.excluded_pmin;
            int j = D - 1;
            for (; j >= 0; --j) {
                if (l[j] < spec.np[j]) {
                    ++l[j];
                    break;
                }
                l[j] = -spec.np[j];
            }
            if (j < 0) break;
        }
    }
    if (mesh.labels.empty()) throw MeshError("phase mesh is empty after |p| exclusion");
    return mesh;
}

// One branch of the initial data: u_{±,0}(y) = A_±(y) e^{i S0(y)/eps} with
// A_± = (A0 ± i B0 / (c |grad S0|)) / 2. Tests may substitute their own u0.
// data_mag bounds |A0| + |B0| without dividing by c, so the mass of any
// lattice point whose branch evaluation fails can still be reported.
template <int D> struct BranchData {
    int sign = +1;
    std::function<Complex(const Vec<D>&)> amplitude;  // A_±
    std::function<Complex(const Vec<D>&)> u0;
    std::function<double(const Vec<D>&)> data_mag;
};

template <int D>
std::pair<BranchData<D>, BranchData<D>> split_branches(const WaveProblem& prob) {
    prob.validate();
    auto make = [&prob](int sign) {
        BranchData<D> b;
        b.sign = sign;
        b.amplitude = [&prob, sign](const Vec<D>& y) -> Complex {
            ScalarEval<D> c = prob.speed.eval<D>(y);
            ScalarEval<D> s = prob.s0.eval<D>(y);
            double gs = norm<D>(s.grad);
            Complex corr = Complex(0, 1) * prob.b0<D>(y) / (c.value * gs);
            return 0.5 * (prob.a0<D>(y) + (sign > 0 ? corr : -corr));
        };
        b.u0 = [&prob, amp = b.amplitude](const Vec<D>& y) -> Complex {
            ScalarEval<D> s = prob.s0.eval<D>(y);
            return amp(y) * cexp_fast(0.0, s.value / prob.epsilon);
        };
        b.data_mag = [&prob](const Vec<D>& y) -> double {
            return std::abs(prob.a0<D>(y)) + std::abs(prob.b0<D>(y));
        };
        return b;
    };
    return {make(+1), make(-1)};
}

template <int D> struct WindowResult {
    Complex psi{};
    double truncated_mass = 0.0;  // estimated |integrand| mass outside the y-grid
};

// Discrete windowed transform: trapezoidal sum over the y-lattice points
// inside the theta-ball around q of
//   u0(y) exp((i/eps)(-p.(y-q))) exp(-|y-q|^2/(2 eps)) * dy_1...dy_d.
// Lattice points of the ball that fall outside [y0, y0+(ny-1)dy] are not
// summed; their |integrand| contribution is reported as truncated_mass.
template <int D>
WindowResult<D> window_transform(const std::function<Complex(const Vec<D>&)>& u0,
                                 const Vec<D>& q, const Vec<D>& p, const MeshSpec<D>& spec,
                                 double eps) {
    WindowResult<D> out;
    const double theta2 = spec.theta * spec.theta;
    std::array<int, D> mlo, mhi;
    for (int j = 0; j < D; ++j) {
        mlo[j] = static_cast<int>(std::ceil((q[j] - spec.theta - spec.y0[j]) / spec.dy[j] - 1e-12));
        mhi[j] = static_cast<int>(std::floor((q[j] + spec.theta - spec.y0[j]) / spec.dy[j] + 1e-12));
    }
    Complex sum = 0.0;
    double lost = 0.0;
    std::array<int, D> m = mlo;
    for (;;) {
        Vec<D> y;
        bool in_grid = true;
        for (int j = 0; j < D; ++j) {
            y[j] = spec.y0[j] + m[j] * spec.dy[j];
            if (m[j] < 0 || m[j] >= spec.ny[j]) in_grid = false;
        }
        Vec<D> w = y - q;
        double r2 = norm2<D>(w);
        if (r2 <= theta2) {
            Complex val = u0(y);
            double gauss = std::exp(-r2 / (2.0 * eps));
            if (in_grid) {
                double phase = -dot<D>(p, w) / eps;
                sum += val * gauss * Complex(std::cos(phase), std::sin(phase));
            } else {
                lost += std::abs(val) * gauss;
            }
        }
        int j = D - 1;
        for (; j >= 0; --j) {
            if (m[j] < mhi[j]) {
                ++m[j];
                break;
            }
            m[j] = mlo[j];
        }
        if (j < 0) break;
    }
    out.psi = sum * spec.dy_measure();
    out.truncated_mass = lost * spec.dy_measure();
    return out;
}

struct DecomposeStats {
    std::size_t labels_per_branch = 0;
    std::size_t excluded_pmin = 0;
    std::size_t atoms_created = 0;
    std::size_t pruned = 0;
    double max_abs_psi = 0.0;
    double truncated_mass = 0.0;
    // y-lattice points whose branch data could not be evaluated (e.g. the
    // inflated y-grid touches a zero of c); they enter the quadrature as 0
    std::size_t eval_failures = 0;
    double dropped_data_mass = 0.0;
};

template <int D> struct DecomposeResult {
    std::vector<Atom<D>> atoms;
    DecomposeStats stats;
};

// Step 2 + 3 initial conditions: one atom per (branch, label) with
// a = 2^{d/2}, Q = q, P = p, identity Jacobian, and weight psi from the
// windowed transform. Atoms with |psi| < prune_rel * max|psi| (or psi = 0)
// are dropped and counted.
template <int D>
DecomposeResult<D> init_atoms(const BranchData<D>& plus, const BranchData<D>& minus,
                              const PhaseMesh<D>& mesh, const MeshSpec<D>& spec, double eps,
                              double prune_rel, int threads) {
    DecomposeResult<D> out;
    const std::size_t n = mesh.labels.size();
    out.stats.labels_per_branch = n;
    out.stats.excluded_pmin = mesh.excluded_pmin;

    // cache branch values on the full y-grid; window sums then only pay
    // for the exponentials
    std::size_t ytotal = 1;
    for (int j = 0; j < D; ++j) ytotal *= static_cast<std::size_t>(spec.ny[j]);
    std::vector<Complex> cache_p(ytotal), cache_m(ytotal);
    std::vector<unsigned char> failed(ytotal, 0);
    parallel_for(ytotal, threads, [&](std::size_t flat) {
        std::size_t rem = flat;
        std::array<int, D> m{};
        for (int j = D - 1; j >= 0; --j) {
            m[j] = static_cast<int>(rem % static_cast<std::size_t>(spec.ny[j]));
            rem /= static_cast<std::size_t>(spec.ny[j]);
        }
        Vec<D> y;
        for (int j = 0; j < D; ++j) y[j] = spec.y0[j] + m[j] * spec.dy[j];
        try {
            cache_p[flat] = plus.u0(y);
            cache_m[flat] = minus.u0(y);
        } catch (const NonPositiveSpeedError&) {
            failed[flat] = 1;
        } catch (const EvalDomainError&) {
            failed[flat] = 1;
        }
    });
    for (std::size_t flat = 0; flat < ytotal; ++flat) {
        if (!failed[flat]) continue;
        ++out.stats.eval_failures;
        cache_p[flat] = cache_m[flat] = Complex(0, 0);
        std::size_t rem = flat;
        Vec<D> y;
        for (int j = D - 1; j >= 0; --j) {
            y[j] = spec.y0[j] +
                   static_cast<double>(rem % static_cast<std::size_t>(spec.ny[j])) * spec.dy[j];
            rem /= static_cast<std::size_t>(spec.ny[j]);
        }
        if (plus.data_mag) {
            try {
                out.stats.dropped_data_mass += plus.data_mag(y) * spec.dy_measure();
            } catch (const EvalDomainError&) {
            }
        }
    }
    auto cached = [&spec](const std::vector<Complex>& cache,
                          const std::function<Complex(const Vec<D>&)>& fallback) {
        return [&spec, &cache, &fallback](const Vec<D>& y) -> Complex {
            std::size_t flat = 0;
            for (int j = 0; j < D; ++j) {
                double t = (y[j] - spec.y0[j]) / spec.dy[j];
                long idx = std::lround(t);
                if (idx < 0 || idx >= spec.ny[j]) {
                    // off-grid points only feed the truncation estimate
                    try {
                        return fallback(y);
                    } catch (const NonPositiveSpeedError&) {
                        return Complex(0, 0);
                    } catch (const EvalDomainError&) {
                        return Complex(0, 0);
                    }
                }
                flat = flat * static_cast<std::size_t>(spec.ny[j]) + static_cast<std::size_t>(idx);
            }
            return cache[flat];
        };
    };
    std::function<Complex(const Vec<D>&)> up = cached(cache_p, plus.u0);
    std::function<Complex(const Vec<D>&)> um = cached(cache_m, minus.u0);

    std::vector<WindowResult<D>> wp(n), wm(n);
    parallel_for(n, threads, [&](std::size_t i) {
        wp[i] = window_transform<D>(up, mesh.labels[i].q, mesh.labels[i].p, spec, eps);
        wm[i] = window_transform<D>(um, mesh.labels[i].q, mesh.labels[i].p, spec, eps);
    });

    double max_psi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        max_psi = std::max(max_psi, std::abs(wp[i].psi));
        max_psi = std::max(max_psi, std::abs(wm[i].psi));
        out.stats.truncated_mass += wp[i].truncated_mass + wm[i].truncated_mass;
    }
    out.stats.max_abs_psi = max_psi;
    const double floor = prune_rel * max_psi;
    const double measure = spec.cell_measure();
    const double a0 = std::pow(2.0, 0.5 * D);

    auto emit = [&](const std::vector<WindowResult<D>>& w, int sign) {
        for (std::size_t i = 0; i < n; ++i) {
            double mag = std::abs(w[i].psi);
            if (mag == 0.0 || mag < floor) {
                ++out.stats.pruned;
                continue;
            }
            Atom<D> atom;
            atom.sign = sign;
            atom.q = mesh.labels[i].q;
            atom.p = mesh.labels[i].p;
            atom.Q = atom.q;
            atom.P = atom.p;
            atom.var = VariationalState<D>::identity();
            atom.a = Complex(a0, 0.0);
            atom.psi = w[i].psi;
            atom.measure = measure;
            out.atoms.push_back(atom);
        }
    };
    emit(wp, +1);
    emit(wm, -1);
    out.stats.atoms_created = out.atoms.size();
    return out;
}

}  // namespace fga
