#include "fga/fd1d.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace fga {

namespace {

struct FdState {
    std::vector<double> pr, pi;  // u^{n-1}
    std::vector<double> cr, ci;  // u^n
    std::size_t step = 0;        // index n of the current level
};

double energy(const FdState& s, const std::vector<double>& c2, double dx, double dt) {
    // sum_j [ |u^{n}-u^{n-1}|^2/dt^2
    //         + c_j^2 Re( conj(D u^{n-1})_j (D u^{n})_j ) ] dx,  D = forward difference / dx
    const std::size_t n = s.cr.size();
    double e = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        double dtr = (s.cr[j] - s.pr[j]) / dt;
        double dti = (s.ci[j] - s.pi[j]) / dt;
        double gpr = (s.pr[j + 1] - s.pr[j]) / dx;
        double gpi = (s.pi[j + 1] - s.pi[j]) / dx;
        double gcr = (s.cr[j + 1] - s.cr[j]) / dx;
        double gci = (s.ci[j + 1] - s.ci[j]) / dx;
        e += (dtr * dtr + dti * dti) + c2[j] * (gpr * gcr + gpi * gci);
    }
    return e * dx;
}

bool near_boundary_active(const FdState& s) {
    const std::size_t n = s.cr.size();
    const std::size_t probe = std::min<std::size_t>(10, n);
    for (std::size_t j = 0; j < probe; ++j) {
        if (std::hypot(s.cr[j], s.ci[j]) > 1e-6) return true;
        if (std::hypot(s.cr[n - 1 - j], s.ci[n - 1 - j]) > 1e-6) return true;
    }
    return false;
}

void write_checkpoint(const std::string& path, const FdState& s, double t) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open checkpoint file " + path);
    std::fprintf(f, "%zu %a %zu\n", s.step, t, s.cr.size());
    for (std::size_t j = 0; j < s.cr.size(); ++j)
        std::fprintf(f, "%a %a %a %a\n", s.pr[j], s.pi[j], s.cr[j], s.ci[j]);
    std::fclose(f);
}

FdState read_checkpoint(const std::string& path, double& t) {
    std::FILE* f = std::fopen(path.c_str(), "r");
    if (!f) throw std::runtime_error("cannot open checkpoint file " + path);
    FdState s;
    std::size_t n = 0;
    if (std::fscanf(f, "%zu %la %zu", &s.step, &t, &n) != 3) {
        std::fclose(f);
        throw std::runtime_error("malformed checkpoint header in " + path);
    }
    s.pr.resize(n);
    s.pi.resize(n);
    s.cr.resize(n);
    s.ci.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (std::fscanf(f, "%la %la %la %la", &s.pr[j], &s.pi[j], &s.cr[j], &s.ci[j]) != 4) {
            std::fclose(f);
            throw std::runtime_error("malformed checkpoint row in " + path);
        }
    }
    std::fclose(f);
    return s;
}

Fd1dResult run(const SpeedField& speed, const BoxDomain& box, FdState state, double t_start,
               const Fd1dOptions& opt) {
    const double lo = box.lo[0];
    const std::size_t n = state.cr.size();
    const double dx = opt.dx, dt = opt.dt;

    std::vector<double> c2(n), r2(n);
    double cfl = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double x = lo + static_cast<double>(j) * dx;
        double c = speed.scalar().eval<1>(Vec<1>{x}).value;  // c may vanish at Dirichlet ends
        c2[j] = c * c;
        double r = c * dt / dx;
        r2[j] = r * r;
        cfl = std::max(cfl, r);
    }
    if (cfl > 1.0)
        throw CflError("CFL violated: max c dt/dx = " + std::to_string(cfl));

    long long remaining = std::llround((opt.t_final - t_start) / dt);
    if (remaining < 0 ||
        std::abs((opt.t_final - t_start) - static_cast<double>(remaining) * dt) > 1e-9 * dt)
        throw ProblemError("fd_wave_1d requires t_final - t_start to be a multiple of dt");

    Fd1dResult out;
    out.energy_initial = energy(state, c2, dx, dt);
    out.energy_max = out.energy_initial;

    std::vector<double> nr(n, 0.0), ni(n, 0.0);
    auto advance = [&](FdState& s) {
        const double* pr = s.pr.data();
        const double* pi = s.pi.data();
        const double* cr = s.cr.data();
        const double* ci = s.ci.data();
        double* outr = nr.data();
        double* outi = ni.data();
        for (std::size_t j = 1; j + 1 < n; ++j) {
            outr[j] = 2.0 * cr[j] - pr[j] + r2[j] * (cr[j + 1] - 2.0 * cr[j] + cr[j - 1]);
            outi[j] = 2.0 * ci[j] - pi[j] + r2[j] * (ci[j + 1] - 2.0 * ci[j] + ci[j - 1]);
        }
        outr[0] = outi[0] = outr[n - 1] = outi[n - 1] = 0.0;
        s.pr.swap(s.cr);
        s.pi.swap(s.ci);
        s.cr.swap(nr);
        s.ci.swap(ni);
        ++s.step;
    };

    const std::size_t estride = opt.energy_stride == 0 ? 1 : opt.energy_stride;
    for (long long k = 0; k < remaining; ++k) {
        advance(state);
        if (state.step % estride == 0 || k + 1 == remaining) {
            out.energy_max = std::max(out.energy_max, energy(state, c2, dx, dt));
            if (near_boundary_active(state)) out.boundary_warning = true;
        }
        if (opt.checkpoint_stride > 0 && !opt.checkpoint_path.empty() &&
            state.step % opt.checkpoint_stride == 0)
            write_checkpoint(opt.checkpoint_path, state,
                             t_start + static_cast<double>(k + 1) * dt);
    }

    Grid<1> grid{{lo}, {dx}, {static_cast<int>(n)}};
    out.u = GridField<1>::zeros(grid);
    for (std::size_t j = 0; j < n; ++j) out.u.values[j] = Complex(state.cr[j], state.ci[j]);

    // one extra step for the centered time derivative at T
    FdState ahead = state;
    advance(ahead);
    out.ut = GridField<1>::zeros(grid);
    for (std::size_t j = 0; j < n; ++j)
        out.ut.values[j] = Complex((ahead.cr[j] - state.pr[j]) / (2.0 * dt),
                                   (ahead.ci[j] - state.pi[j]) / (2.0 * dt));
    return out;
}

}  // namespace

Fd1dResult fd_wave_1d(const SpeedField& speed, const BoxDomain& box,
                      const std::function<Complex(double)>& u0,
                      const std::function<Complex(double)>& v0, const Fd1dOptions& opt) {
    if (box.d != 1) throw ProblemError("fd_wave_1d is one-dimensional");
    if (!(opt.dx > 0 && opt.dt > 0)) throw ProblemError("fd_wave_1d needs dx, dt > 0");
    const double lo = box.lo[0], hi = box.hi[0];
    const std::size_t n = static_cast<std::size_t>(std::llround((hi - lo) / opt.dx)) + 1;

    FdState s;
    s.pr.resize(n);
    s.pi.resize(n);
    s.cr.resize(n);
    s.ci.resize(n);

    if (opt.t_final == 0.0) {
        Grid<1> grid{{lo}, {opt.dx}, {static_cast<int>(n)}};
        Fd1dResult out;
        out.u = GridField<1>::zeros(grid);
        out.ut = GridField<1>::zeros(grid);
        for (std::size_t j = 0; j < n; ++j) {
            double x = lo + static_cast<double>(j) * opt.dx;
            out.u.values[j] = u0(x);
            out.ut.values[j] = v0(x);
        }
        out.u.values.front() = out.u.values.back() = Complex(0, 0);
        return out;
    }

    std::vector<Complex> a(n), v(n);
    for (std::size_t j = 0; j < n; ++j) {
        double x = lo + static_cast<double>(j) * opt.dx;
        a[j] = u0(x);
        v[j] = v0(x);
    }
    a.front() = a.back() = Complex(0, 0);  // Dirichlet ends

    // u^1 by Taylor with the discrete Laplacian
    for (std::size_t j = 0; j < n; ++j) {
        s.pr[j] = a[j].real();
        s.pi[j] = a[j].imag();
    }
    for (std::size_t j = 1; j + 1 < n; ++j) {
        double x = lo + static_cast<double>(j) * opt.dx;
        double c = speed.scalar().eval<1>(Vec<1>{x}).value;  // c may vanish at Dirichlet ends
        Complex lap = (a[j + 1] - 2.0 * a[j] + a[j - 1]) / (opt.dx * opt.dx);
        Complex u1 = a[j] + opt.dt * v[j] + 0.5 * opt.dt * opt.dt * c * c * lap;
        s.cr[j] = u1.real();
        s.ci[j] = u1.imag();
    }
    s.cr.front() = s.ci.front() = s.cr.back() = s.ci.back() = 0.0;
    s.step = 1;

    return run(speed, box, std::move(s), opt.dt, opt);  // Taylor step put us at t = dt
}

Fd1dResult fd_wave_1d_resume(const SpeedField& speed, const BoxDomain& box,
                             const std::string& checkpoint_path, const Fd1dOptions& opt) {
    double t = 0.0;
    FdState s = read_checkpoint(checkpoint_path, t);
    return run(speed, box, std::move(s), t, opt);
}

}  // namespace fga
