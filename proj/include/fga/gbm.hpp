#pragma once

#include <vector>

#include "fga/reconstruct.hpp"
#include "fga/scene.hpp"

namespace fga {

// One Gaussian beam (1D formulation of the comparison method).
struct Beam {
    double y = 0.0;    // center
    double xi = 0.0;   // momentum
    double S = 0.0;    // action (constant along the flow)
    Complex M{};       // complex phase Hessian; Im M > 0 keeps the beam localized
    Complex A{};       // amplitude
    bool alive = true;
};

struct GbmSettings {
    double dt = 0.0;
    double t_final = 0.0;
    double p_min = 1e-6;
};

struct GbmCensus {
    std::size_t alive = 0;
    std::size_t dead = 0;
    double min_im_M = 0.0;       // smallest Im M seen over the run (spreading indicator)
    bool im_M_loss = false;      // Im M dropped to <= 0 for some beam
};

// Beam ICs from the problem data: y = y0_start + j dy0, xi = S0'(y),
// S = S0(y), M = S0''(y) + i, A = A0(y).
std::vector<Beam> init_beams_multi(const WaveProblem& prob, double y0_start, double dy0, int n);

// A single beam centered at y_center (Example 2's initial datum is
// exactly one beam).
Beam init_beam_single(const WaveProblem& prob, double y_center);

// RK4 on (y, xi, S, M, A):
//   dy/dt = c xi/|xi|, dxi/dt = -c' |xi|, dS/dt = 0,
//   dM/dt = -2 c' (xi/|xi|) M - c'' |xi|, dA/dt = (1/2) c' (xi/|xi|) A.
GbmCensus gbm_propagate(std::vector<Beam>& beams, const GbmSettings& cfg, const SpeedField& speed);

// u(x) = sum_j r_theta(|x-y_j|) (2 pi eps)^{-1/2} A_j
//        * exp{(i/eps)(S_j + xi_j (x-y_j) + M_j (x-y_j)^2 / 2)} * dy0
GridField<1> gbm_reconstruct(const std::vector<Beam>& beams, const Grid<1>& grid, double eps,
                             double theta, double dy0);

}  // namespace fga
