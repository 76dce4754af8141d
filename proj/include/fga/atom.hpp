#pragma once

#include "fga/linalg.hpp"

namespace fga {

// Real Jacobian blocks of the phase-space flow map, block[j][k] = d X_k / d a_j.
// The complex dz-blocks and Z are derived, never stored.
template <int D> struct VariationalState {
    Mat<D> dqQ{}, dpQ{}, dqP{}, dpP{};

    static VariationalState identity() {
        VariationalState v;
        v.dqQ = midentity<D>();
        v.dpP = midentity<D>();
        return v;
    }

    CMat<D> zQ() const { return combine_minus_i(dqQ, dpQ); }  // dzQ = dqQ - i dpQ
    CMat<D> zP() const { return combine_minus_i(dqP, dpP); }
    CMat<D> Z() const {                                       // Z = dzQ + i dzP
        CMat<D> z;
        for (int j = 0; j < D; ++j)
            for (int k = 0; k < D; ++k)
                z[j][k] = Complex(dqQ[j][k] + dpP[j][k], dqP[j][k] - dpQ[j][k]);
        return z;
    }

    double min_eig_zzstar() const { return min_eig_aat<D>(Z()); }

    // max-entry residual of F J F^T - J with F = [[dqQ, dqP], [dpQ, dpP]],
    // J = [[0, -I], [I, 0]]
    double symplectic_residual() const {
        // F J F^T blocks: [[B A^T - A B^T, B C^T - A D^T], [D A^T - C B^T, D C^T - C D^T]]
        const Mat<D>&A = dqQ, &B = dqP, &C = dpQ, &Dm = dpP;
        Mat<D> r00 = matmul(B, transpose(A)) - matmul(A, transpose(B));
        Mat<D> r01 = matmul(B, transpose(C)) - matmul(A, transpose(Dm));
        Mat<D> r10 = matmul(Dm, transpose(A)) - matmul(C, transpose(B));
        Mat<D> r11 = matmul(Dm, transpose(C)) - matmul(C, transpose(Dm));
        double res = 0.0;
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) {
                double tgt01 = (i == j) ? -1.0 : 0.0;
                res = std::max(res, std::abs(r00[i][j]));
                res = std::max(res, std::abs(r01[i][j] - tgt01));
                res = std::max(res, std::abs(r10[i][j] + tgt01));
                res = std::max(res, std::abs(r11[i][j]));
            }
        return res;
    }
};

enum class DeathReason { None, MomentumFloor, NonFinite, SingularZ };

// One frozen Gaussian: phase-space label (q, p), live center (Q, P),
// prefactor a, Jacobian state, and the fixed weight psi from the initial
// decomposition. `measure` is the phase-space cell volume dq^d * dp^d it
// carries into the reconstruction sum.
template <int D> struct Atom {
    int sign = +1;
    Vec<D> q{}, p{};
    Vec<D> Q{}, P{};
    VariationalState<D> var = VariationalState<D>::identity();
    Complex a{};
    Complex psi{};
    double measure = 0.0;
    bool alive = true;
    DeathReason death = DeathReason::None;
};

}  // namespace fga
