#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "fga/atom.hpp"
#include "fga/parallel.hpp"
#include "fga/scene.hpp"

namespace fga {

enum class PrefactorForm { Direct, LogDerivative };

struct FlowSettings {
    double dt = 0.0;
    double t_final = 0.0;
    double p_min = 1e-6;
    PrefactorForm form = PrefactorForm::LogDerivative;

    void validate() const {
        if (!(dt > 0.0)) throw ProblemError("flow dt must be positive");
        if (t_final < 0.0) throw ProblemError("t_final must be nonnegative");
    }
};

// d Q/dt = ±c P/|P|,  d P/dt = ∓(grad c)|P|
template <int D>
void hamiltonian_rhs(const Vec<D>& P, int sign, const ScalarEval<D>& c, Vec<D>& dQ, Vec<D>& dP) {
    double pn = norm<D>(P);
    double s = static_cast<double>(sign);
    for (int j = 0; j < D; ++j) {
        dQ[j] = s * c.value * P[j] / pn;
        dP[j] = -s * c.grad[j] * pn;
    }
}

// Blockwise variational equations; identical right-hand side for the
// dq- and dp-blocks since the coefficients depend only on (Q, P):
//   d(daQ)/dt = ±[ daQ (grad c ⊗ P)/|P| + c daP (I/|P| - P⊗P/|P|^3) ]
//   d(daP)/dt = ∓[ daQ (hess c) |P| + daP (P ⊗ grad c)/|P| ]
template <int D>
void variational_block_rhs(const Mat<D>& daQ, const Mat<D>& daP, const Vec<D>& P, int sign,
                           const ScalarEval<D>& c, Mat<D>& ddaQ, Mat<D>& ddaP) {
    double pn = norm<D>(P);
    double s = static_cast<double>(sign);
    Mat<D> gP = outer<D>(c.grad, P);            // grad c ⊗ P
    Mat<D> Pg = outer<D>(P, c.grad);            // P ⊗ grad c
    Mat<D> proj;                                // I/|P| - P⊗P/|P|^3
    for (int j = 0; j < D; ++j)
        for (int k = 0; k < D; ++k)
            proj[j][k] = ((j == k) ? 1.0 / pn : 0.0) - P[j] * P[k] / (pn * pn * pn);
    ddaQ = s * (matmul(daQ, (1.0 / pn) * gP) + c.value * matmul(daP, proj));
    ddaP = (-s) * (pn * matmul(daQ, c.hess) + matmul(daP, (1.0 / pn) * Pg));
}

template <int D>
VariationalState<D> variational_rhs(const VariationalState<D>& var, const Vec<D>& P, int sign,
                                    const ScalarEval<D>& c) {
    VariationalState<D> d;
    variational_block_rhs<D>(var.dqQ, var.dqP, P, sign, c, d.dqQ, d.dqP);
    variational_block_rhs<D>(var.dpQ, var.dpP, P, sign, c, d.dpQ, d.dpP);
    return d;
}

// Prefactor evolution. Direct form:
//   da/dt = ±(a/2)[ P/|P|·grad c - (d-1) i c/|P| ]
//         ± (a/2) tr( Z^{-1} dzQ ( 2 P/|P| ⊗ grad c
//                                  - (i c/|P|)(P⊗P/|P|^2 - I) - i |P| hess c ) )
// Log-derivative form:
//   da/dt = ±a P/|P|·grad c + (a/2) tr(Z^{-1} dZ/dt),
// with dZ/dt assembled from the variational right-hand side (the branch
// sign already lives in var_rhs).
template <int D>
Complex prefactor_rhs(Complex a, const Vec<D>& P, const VariationalState<D>& var,
                      const VariationalState<D>& var_rhs, int sign, const ScalarEval<D>& c,
                      PrefactorForm form, bool* singular = nullptr) {
    double pn = norm<D>(P);
    double s = static_cast<double>(sign);
    CMat<D> Z = var.Z();
    if (min_eig_aat<D>(Z) < 1e-8) {
        if (singular) *singular = true;
        return Complex(0, 0);
    }
    CMat<D> Zinv = cinverse<D>(Z);
    double ndotg = dot<D>(P, c.grad) / pn;

    if (form == PrefactorForm::LogDerivative) {
        // dZ/dt = (d dqQ - i d dpQ) + i (d dqP - i d dpP)
        CMat<D> dZ;
        for (int j = 0; j < D; ++j)
            for (int k = 0; k < D; ++k)
                dZ[j][k] = Complex(var_rhs.dqQ[j][k] + var_rhs.dpP[j][k],
                                   var_rhs.dqP[j][k] - var_rhs.dpQ[j][k]);
        Complex tr = ctrace<D>(cmatmul<D>(Zinv, dZ));
        return s * a * ndotg + 0.5 * a * tr;
    }

    const Complex I(0, 1);
    CMat<D> inner;
    for (int j = 0; j < D; ++j)
        for (int k = 0; k < D; ++k) {
            double np_j = P[j] / pn;
            double proj = P[j] * P[k] / (pn * pn) - ((j == k) ? 1.0 : 0.0);
            inner[j][k] = Complex(2.0 * np_j * c.grad[k], 0.0) -
                          I * (c.value / pn) * proj - I * pn * c.hess[j][k];
        }
    Complex tr = ctrace<D>(cmatmul<D>(cmatmul<D>(Zinv, var.zQ()), inner));
    Complex bracket = Complex(ndotg, 0.0) - I * (static_cast<double>(D) - 1.0) * c.value / pn;
    return s * 0.5 * a * (bracket + tr);
}

namespace detail {

// full per-atom state with the vector-space operations RK4 needs
template <int D> struct FlowState {
    Vec<D> Q{}, P{};
    VariationalState<D> var{};
    Complex a{};
};

template <int D>
FlowState<D> axpy(const FlowState<D>& y, double h, const FlowState<D>& k) {
    FlowState<D> r;
    r.Q = y.Q + h * k.Q;
    r.P = y.P + h * k.P;
    r.var.dqQ = y.var.dqQ + h * k.var.dqQ;
    r.var.dpQ = y.var.dpQ + h * k.var.dpQ;
    r.var.dqP = y.var.dqP + h * k.var.dqP;
    r.var.dpP = y.var.dpP + h * k.var.dpP;
    r.a = y.a + h * k.a;
    return r;
}

template <int D>
bool flow_rhs(const FlowState<D>& y, int sign, const SpeedField& speed,
              const FlowSettings& cfg, FlowState<D>& out, DeathReason& why) {
    if (norm<D>(y.P) < cfg.p_min) {
        why = DeathReason::MomentumFloor;
        return false;
    }
    ScalarEval<D> c = speed.eval<D>(y.Q);
    hamiltonian_rhs<D>(y.P, sign, c, out.Q, out.P);
    out.var = variational_rhs<D>(y.var, y.P, sign, c);
    bool singular = false;
    out.a = prefactor_rhs<D>(y.a, y.P, y.var, out.var, sign, c, cfg.form, &singular);
    if (singular) {
        why = DeathReason::SingularZ;
        return false;
    }
    return true;
}

template <int D> bool finite(const FlowState<D>& y) {
    auto ok = [](double v) { return std::isfinite(v); };
    for (int j = 0; j < D; ++j)
        if (!ok(y.Q[j]) || !ok(y.P[j])) return false;
    for (int j = 0; j < D; ++j)
        for (int k = 0; k < D; ++k)
            if (!ok(y.var.dqQ[j][k]) || !ok(y.var.dpQ[j][k]) || !ok(y.var.dqP[j][k]) ||
                !ok(y.var.dpP[j][k]))
                return false;
    return ok(y.a.real()) && ok(y.a.imag());
}

}  // namespace detail

// One classical RK4 step of the coupled (Q, P, var, a) system. dt may be
// negative (used by the time-reversal checks). Returns false and marks
// the atom dead on |P| underflow, singular Z, or non-finite state.
template <int D>
bool rk4_step(Atom<D>& atom, double dt, const SpeedField& speed, const FlowSettings& cfg) {
    using detail::FlowState;
    if (!atom.alive) return false;
    FlowState<D> y{atom.Q, atom.P, atom.var, atom.a};
    FlowState<D> k1, k2, k3, k4;
    DeathReason why = DeathReason::None;
    bool ok = false;
    try {
        ok = detail::flow_rhs<D>(y, atom.sign, speed, cfg, k1, why) &&
             detail::flow_rhs<D>(detail::axpy(y, 0.5 * dt, k1), atom.sign, speed, cfg, k2, why) &&
             detail::flow_rhs<D>(detail::axpy(y, 0.5 * dt, k2), atom.sign, speed, cfg, k3, why) &&
             detail::flow_rhs<D>(detail::axpy(y, dt, k3), atom.sign, speed, cfg, k4, why);
    } catch (const NonPositiveSpeedError&) {
        // the trajectory left the valid domain (c <= 0 or non-finite Q);
        // kill the atom, not the swarm
        why = DeathReason::NonFinite;
        ok = false;
    } catch (const EvalDomainError&) {
        why = DeathReason::NonFinite;
        ok = false;
    }
    if (!ok) {
        atom.alive = false;
        atom.death = why;
        return false;
    }
    FlowState<D> next = detail::axpy(y, dt / 6.0, k1);
    next = detail::axpy(next, dt / 3.0, k2);
    next = detail::axpy(next, dt / 3.0, k3);
    next = detail::axpy(next, dt / 6.0, k4);
    if (!detail::finite(next)) {
        atom.alive = false;
        atom.death = DeathReason::NonFinite;
        return false;
    }
    atom.Q = next.Q;
    atom.P = next.P;
    atom.var = next.var;
    atom.a = next.a;
    return true;
}

struct FlowCensus {
    std::size_t alive = 0;
    std::size_t dead_momentum = 0;
    std::size_t dead_nonfinite = 0;
    std::size_t dead_singular = 0;
    std::size_t dead() const { return dead_momentum + dead_nonfinite + dead_singular; }
};

// Advances all alive atoms to t_final with fixed steps; the last partial
// step is shortened to land exactly on t_final. Atoms are independent;
// results are identical for any thread count. The monitor, when present,
// runs serially after every `monitor_stride` steps and at the end.
template <int D>
FlowCensus propagate(std::span<Atom<D>> atoms, const FlowSettings& cfg, const SpeedField& speed,
                     int threads,
                     const std::function<void(double, std::span<const Atom<D>>)>& monitor = {},
                     std::size_t monitor_stride = 1) {
    cfg.validate();
    const double T = cfg.t_final;
    std::size_t nfull = static_cast<std::size_t>(std::floor(T / cfg.dt + 1e-12));
    double rem = T - static_cast<double>(nfull) * cfg.dt;
    if (rem < 1e-12 * cfg.dt) rem = 0.0;

    double t = 0.0;
    for (std::size_t step = 0; step < nfull; ++step) {
        parallel_for(atoms.size(), threads,
                     [&](std::size_t i) { rk4_step<D>(atoms[i], cfg.dt, speed, cfg); });
        t += cfg.dt;
        if (monitor && ((step + 1) % monitor_stride == 0))
            monitor(t, std::span<const Atom<D>>(atoms.data(), atoms.size()));
    }
    if (rem > 0.0) {
        parallel_for(atoms.size(), threads,
                     [&](std::size_t i) { rk4_step<D>(atoms[i], rem, speed, cfg); });
        t = T;
        if (monitor) monitor(t, std::span<const Atom<D>>(atoms.data(), atoms.size()));
    }

    FlowCensus census;
    for (const Atom<D>& a : atoms) {
        if (a.alive) ++census.alive;
        else if (a.death == DeathReason::MomentumFloor) ++census.dead_momentum;
        else if (a.death == DeathReason::SingularZ) ++census.dead_singular;
        else ++census.dead_nonfinite;
    }
    return census;
}

// Square root with the branch chosen for continuity against the previous
// value: flip the principal root when it points away from `prev`.
inline Complex sqrt_continuous(Complex value, Complex prev) {
    Complex r = std::sqrt(value);
    if (r.real() * prev.real() + r.imag() * prev.imag() < 0.0) return -r;
    return r;
}

// Verbatim complex-block evolution of (dzQ, dzP); exists to cross-check
// the real-block path (same linear equations by superposition).
template <int D> struct ComplexBlockState {
    Vec<D> Q{}, P{};
    CMat<D> zQ{}, zP{};
};

template <int D>
void complex_block_rhs(const ComplexBlockState<D>& y, int sign, const ScalarEval<D>& c,
                       ComplexBlockState<D>& out) {
    double pn = norm<D>(y.P);
    double s = static_cast<double>(sign);
    hamiltonian_rhs<D>(y.P, sign, c, out.Q, out.P);
    CMat<D> gP = to_complex<D>(outer<D>(c.grad, y.P));
    CMat<D> Pg = to_complex<D>(outer<D>(y.P, c.grad));
    CMat<D> hess = to_complex<D>(c.hess);
    CMat<D> proj;
    for (int j = 0; j < D; ++j)
        for (int k = 0; k < D; ++k)
            proj[j][k] = Complex(((j == k) ? 1.0 / pn : 0.0) - y.P[j] * y.P[k] / (pn * pn * pn), 0);
    out.zQ = Complex(s / pn, 0) * cmatmul<D>(y.zQ, gP) + Complex(s * c.value, 0) * cmatmul<D>(y.zP, proj);
    out.zP = Complex(-s * pn, 0) * cmatmul<D>(y.zQ, hess) + Complex(-s / pn, 0) * cmatmul<D>(y.zP, Pg);
}

template <int D>
void complex_block_rk4(ComplexBlockState<D>& y, double dt, int sign, const SpeedField& speed) {
    auto rhs = [&](const ComplexBlockState<D>& s) {
        ComplexBlockState<D> d;
        complex_block_rhs<D>(s, sign, speed.eval<D>(s.Q), d);
        return d;
    };
    auto step = [&](const ComplexBlockState<D>& base, double h, const ComplexBlockState<D>& k) {
        ComplexBlockState<D> r = base;
        r.Q = base.Q + h * k.Q;
        r.P = base.P + h * k.P;
        r.zQ = base.zQ + Complex(h, 0) * k.zQ;
        r.zP = base.zP + Complex(h, 0) * k.zP;
        return r;
    };
    ComplexBlockState<D> k1 = rhs(y);
    ComplexBlockState<D> k2 = rhs(step(y, 0.5 * dt, k1));
    ComplexBlockState<D> k3 = rhs(step(y, 0.5 * dt, k2));
    ComplexBlockState<D> k4 = rhs(step(y, dt, k3));
    y.Q = y.Q + (dt / 6.0) * (k1.Q + 2.0 * (k2.Q + k3.Q) + k4.Q);
    y.P = y.P + (dt / 6.0) * (k1.P + 2.0 * (k2.P + k3.P) + k4.P);
    auto comb = [&](CMat<D> a, CMat<D> b, CMat<D> c2, CMat<D> d) {
        CMat<D> r;
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j)
                r[i][j] = (dt / 6.0) * (a[i][j] + 2.0 * (b[i][j] + c2[i][j]) + d[i][j]);
        return r;
    };
    y.zQ = y.zQ + comb(k1.zQ, k2.zQ, k3.zQ, k4.zQ);
    y.zP = y.zP + comb(k1.zP, k2.zP, k3.zP, k4.zP);
}

}  // namespace fga
