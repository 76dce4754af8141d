#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

// Small fixed-dimension linear algebra for d = 1, 2.
//
// Jacobian block convention used throughout: for a block named daX
// (a in {q,p}, X in {Q,P}), the entry daX[j][k] holds d X_k / d a_j.
// With this convention the variational equations are literal matrix
// products, and (dqQ P)_j = sum_k dqQ[j][k] P_k.

namespace fga {

using Complex = std::complex<double>;

template <std::size_t D> using VecN = std::array<double, D>;
template <std::size_t D> using MatN = std::array<std::array<double, D>, D>;
template <std::size_t D> using CMatN = std::array<std::array<Complex, D>, D>;

template <int D> using Vec = VecN<static_cast<std::size_t>(D)>;
template <int D> using Mat = MatN<static_cast<std::size_t>(D)>;
template <int D> using CMat = CMatN<static_cast<std::size_t>(D)>;

// ---- real vectors ----

template <std::size_t D> inline VecN<D> operator+(const VecN<D>& a, const VecN<D>& b) {
    VecN<D> r;
    for (std::size_t i = 0; i < D; ++i) r[i] = a[i] + b[i];
    return r;
}

template <std::size_t D> inline VecN<D> operator-(const VecN<D>& a, const VecN<D>& b) {
    VecN<D> r;
    for (std::size_t i = 0; i < D; ++i) r[i] = a[i] - b[i];
    return r;
}

template <std::size_t D> inline VecN<D> operator*(double s, const VecN<D>& a) {
    VecN<D> r;
    for (std::size_t i = 0; i < D; ++i) r[i] = s * a[i];
    return r;
}

template <std::size_t D> inline double dot(const VecN<D>& a, const VecN<D>& b) {
    double s = 0;
    for (std::size_t i = 0; i < D; ++i) s += a[i] * b[i];
    return s;
}

template <std::size_t D> inline double norm2(const VecN<D>& a) { return dot(a, a); }
template <std::size_t D> inline double norm(const VecN<D>& a) { return std::sqrt(norm2(a)); }

// ---- real matrices ----

template <std::size_t D> inline MatN<D> midentity() {
    MatN<D> r{};
    for (std::size_t i = 0; i < D; ++i) r[i][i] = 1.0;
    return r;
}

template <std::size_t D> inline MatN<D> operator+(const MatN<D>& a, const MatN<D>& b) {
    MatN<D> r;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
}

template <std::size_t D> inline MatN<D> operator-(const MatN<D>& a, const MatN<D>& b) {
    MatN<D> r;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) r[i][j] = a[i][j] - b[i][j];
    return r;
}

template <std::size_t D> inline MatN<D> operator*(double s, const MatN<D>& a) {
    MatN<D> r;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) r[i][j] = s * a[i][j];
    return r;
}

// outer(u, v)[j][k] = u_j v_k
template <std::size_t D> inline MatN<D> outer(const VecN<D>& u, const VecN<D>& v) {
    MatN<D> r;
    for (std::size_t j = 0; j < D; ++j)
        for (std::size_t k = 0; k < D; ++k) r[j][k] = u[j] * v[k];
    return r;
}

template <std::size_t D> inline MatN<D> matmul(const MatN<D>& a, const MatN<D>& b) {
    MatN<D> r{};
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t k = 0; k < D; ++k)
            for (std::size_t j = 0; j < D; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

template <std::size_t D> inline VecN<D> matvec(const MatN<D>& a, const VecN<D>& v) {
    VecN<D> r{};
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) r[i] += a[i][j] * v[j];
    return r;
}

template <std::size_t D> inline MatN<D> transpose(const MatN<D>& a) {
    MatN<D> r;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) r[i][j] = a[j][i];
    return r;
}

// ---- complex matrices ----

template <std::size_t D> inline CMatN<D> to_complex(const MatN<D>& a) {
    CMatN<D> r;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) r[i][j] = Complex(a[i][j], 0.0);
    return r;
}

// re - i * im, used for the dz = dq - i dp combinations
template <std::size_t D>
inline CMatN<D> combine_minus_i(const MatN<D>& re, const MatN<D>& im) {
    CMatN<D> r;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) r[i][j] = Complex(re[i][j], -im[i][j]);
    return r;
}

template <std::size_t D> inline CMatN<D> operator+(const CMatN<D>& a, const CMatN<D>& b) {
    CMatN<D> r;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
}

template <std::size_t D> inline CMatN<D> operator*(Complex s, const CMatN<D>& a) {
    CMatN<D> r;
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) r[i][j] = s * a[i][j];
    return r;
}

template <std::size_t D> inline CMatN<D> cmatmul(const CMatN<D>& a, const CMatN<D>& b) {
    CMatN<D> r{};
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t k = 0; k < D; ++k)
            for (std::size_t j = 0; j < D; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

template <std::size_t D> inline Complex ctrace(const CMatN<D>& a) {
    Complex s = 0;
    for (std::size_t i = 0; i < D; ++i) s += a[i][i];
    return s;
}

template <std::size_t D> inline Complex cdet(const CMatN<D>& a) {
    if constexpr (D == 1) return a[0][0];
    else return a[0][0] * a[1][1] - a[0][1] * a[1][0];
}

template <std::size_t D> inline CMatN<D> cinverse(const CMatN<D>& a) {
    if constexpr (D == 1) {
        return CMatN<1>{{{1.0 / a[0][0]}}};
    } else {
        Complex inv = 1.0 / cdet<2>(a);
        CMatN<2> r;
        r[0][0] = a[1][1] * inv;
        r[0][1] = -a[0][1] * inv;
        r[1][0] = -a[1][0] * inv;
        r[1][1] = a[0][0] * inv;
        return r;
    }
}

// smallest eigenvalue of the Hermitian product A A*
template <std::size_t D> inline double min_eig_aat(const CMatN<D>& a) {
    if constexpr (D == 1) {
        return std::norm(a[0][0]);
    } else {
        double h00 = std::norm(a[0][0]) + std::norm(a[0][1]);
        double h11 = std::norm(a[1][0]) + std::norm(a[1][1]);
        Complex h01 = a[0][0] * std::conj(a[1][0]) + a[0][1] * std::conj(a[1][1]);
        double tr = h00 + h11;
        double disc = (h00 - h11) * (h00 - h11) + 4.0 * std::norm(h01);
        return 0.5 * (tr - std::sqrt(disc));
    }
}

// exp(re + i im) without the libstdc++ complex-exp overhead in hot loops
inline Complex cexp_fast(double re, double im) {
    double m = std::exp(re);
    return Complex(m * std::cos(im), m * std::sin(im));
}

}  // namespace fga
