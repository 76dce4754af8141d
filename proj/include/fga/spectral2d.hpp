#pragma once

#include <functional>
#include <vector>

#include "fga/reconstruct.hpp"
#include "fga/scene.hpp"

namespace fga {

// In-place radix-2 FFT; n must be a power of two. inverse applies the 1/n
// normalization.
void fft_1d(Complex* data, std::size_t n, bool inverse);
void fft_2d(std::vector<Complex>& data, std::size_t n0, std::size_t n1, bool inverse);

struct Spectral2dResult {
    GridField<2> u, ut;
};

// Exact Fourier propagation of u_tt = c^2 Lap u on the periodic box
// spanned by `grid` (right endpoints excluded, counts power of two):
//   u^(t,k)  = cos(c|k|t) u0^(k) + sin(c|k|t)/(c|k|) v0^(k),
//   ut^(t,k) = -c|k| sin(c|k|t) u0^(k) + cos(c|k|t) v0^(k),
// with the k = 0 mode using the limit u0^ + t v0^. Requires constant c.
Spectral2dResult spectral_wave_2d(const SpeedField& speed, const Grid<2>& grid,
                                  const std::function<Complex(double, double)>& u0,
                                  const std::function<Complex(double, double)>& v0,
                                  double t_final);

}  // namespace fga
