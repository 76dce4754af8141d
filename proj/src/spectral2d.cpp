#include "fga/spectral2d.hpp"

#include <cmath>

namespace fga {

void fft_1d(Complex* data, std::size_t n, bool inverse) {
    if (n == 0 || (n & (n - 1)) != 0)
        throw ProblemError("fft size must be a power of two, got " + std::to_string(n));
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * M_PI / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        Complex wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                Complex u = data[i + k];
                Complex v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse) {
        double inv = 1.0 / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) data[i] *= inv;
    }
}

void fft_2d(std::vector<Complex>& data, std::size_t n0, std::size_t n1, bool inverse) {
    // rows (axis 1 contiguous)
    for (std::size_t r = 0; r < n0; ++r) fft_1d(data.data() + r * n1, n1, inverse);
    // columns
    std::vector<Complex> col(n0);
    for (std::size_t c = 0; c < n1; ++c) {
        for (std::size_t r = 0; r < n0; ++r) col[r] = data[r * n1 + c];
        fft_1d(col.data(), n0, inverse);
        for (std::size_t r = 0; r < n0; ++r) data[r * n1 + c] = col[r];
    }
}

Spectral2dResult spectral_wave_2d(const SpeedField& speed, const Grid<2>& grid,
                                  const std::function<Complex(double, double)>& u0,
                                  const std::function<Complex(double, double)>& v0,
                                  double t_final) {
    auto cval = speed.constant_value();
    if (!cval) throw ProblemError("spectral_wave_2d requires a constant wave speed");
    const double c = *cval;
    if (!(c > 0)) throw NonPositiveSpeedError("constant speed must be positive");

    const std::size_t n0 = static_cast<std::size_t>(grid.nx[0]);
    const std::size_t n1 = static_cast<std::size_t>(grid.nx[1]);
    const double L0 = grid.dx[0] * static_cast<double>(n0);
    const double L1 = grid.dx[1] * static_cast<double>(n1);

    std::vector<Complex> uh(n0 * n1), vh(n0 * n1);
    for (std::size_t i = 0; i < n0; ++i) {
        double x1 = grid.x0[0] + static_cast<double>(i) * grid.dx[0];
        for (std::size_t j = 0; j < n1; ++j) {
            double x2 = grid.x0[1] + static_cast<double>(j) * grid.dx[1];
            uh[i * n1 + j] = u0(x1, x2);
            vh[i * n1 + j] = v0(x1, x2);
        }
    }
    fft_2d(uh, n0, n1, false);
    fft_2d(vh, n0, n1, false);

    auto wavenumber = [](std::size_t idx, std::size_t n, double L) {
        long m = static_cast<long>(idx);
        if (m >= static_cast<long>(n / 2)) m -= static_cast<long>(n);
        return 2.0 * M_PI * static_cast<double>(m) / L;
    };

    for (std::size_t i = 0; i < n0; ++i) {
        double k0 = wavenumber(i, n0, L0);
        for (std::size_t j = 0; j < n1; ++j) {
            double k1 = wavenumber(j, n1, L1);
            double ck = c * std::hypot(k0, k1);
            Complex a = uh[i * n1 + j];
            Complex b = vh[i * n1 + j];
            if (ck == 0.0) {
                uh[i * n1 + j] = a + t_final * b;
                // vh unchanged
            } else {
                double cs = std::cos(ck * t_final);
                double sn = std::sin(ck * t_final);
                uh[i * n1 + j] = cs * a + (sn / ck) * b;
                vh[i * n1 + j] = -ck * sn * a + cs * b;
            }
        }
    }
    fft_2d(uh, n0, n1, true);
    fft_2d(vh, n0, n1, true);

    Spectral2dResult out;
    out.u = {grid, std::move(uh)};
    out.ut = {grid, std::move(vh)};
    return out;
}

}  // namespace fga
