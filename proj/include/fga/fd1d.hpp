#pragma once

#include <functional>
#include <string>

#include "fga/reconstruct.hpp"
#include "fga/scene.hpp"

namespace fga {

struct CflError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Fd1dOptions {
    double dx = 0.0;
    double dt = 0.0;
    double t_final = 0.0;
    std::string checkpoint_path;     // when set, (u^{n-1}, u^n) pairs are written
    std::size_t checkpoint_stride = 0;
    std::size_t energy_stride = 256;  // steps between energy/boundary probes
};

struct Fd1dResult {
    GridField<1> u;             // u(T, x)
    GridField<1> ut;            // centered d/dt u(T, x)
    double energy_initial = 0.0;
    double energy_max = 0.0;
    bool boundary_warning = false;  // |u| above 1e-6 within 10 nodes of an end
};

// Second-order centered scheme for  u_tt = c(x)^2 u_xx  on [lo, hi] with
// homogeneous Dirichlet ends; the first step is seeded by the Taylor
// expansion u^1 = u^0 + dt v^0 + (dt^2/2) c^2 Lap_h u^0. Throws CflError
// unless max c * dt/dx <= 1.
Fd1dResult fd_wave_1d(const SpeedField& speed, const BoxDomain& box,
                      const std::function<Complex(double)>& u0,
                      const std::function<Complex(double)>& v0, const Fd1dOptions& opt);

// Continue a run from a checkpoint written by fd_wave_1d.
Fd1dResult fd_wave_1d_resume(const SpeedField& speed, const BoxDomain& box,
                             const std::string& checkpoint_path, const Fd1dOptions& opt);

}  // namespace fga
