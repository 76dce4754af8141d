#include "fga/gbm.hpp"

#include <cmath>

namespace fga {

std::vector<Beam> init_beams_multi(const WaveProblem& prob, double y0_start, double dy0, int n) {
    std::vector<Beam> beams;
    beams.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        Vec<1> y{y0_start + j * dy0};
        ScalarEval<1> s = prob.s0.eval<1>(y);
        Beam b;
        b.y = y[0];
        b.xi = s.grad[0];
        b.S = s.value;
        b.M = Complex(s.hess[0][0], 1.0);
        b.A = prob.a0<1>(y);
        beams.push_back(b);
    }
    return beams;
}

Beam init_beam_single(const WaveProblem& prob, double y_center) {
    Vec<1> y{y_center};
    ScalarEval<1> s = prob.s0.eval<1>(y);
    Beam b;
    b.y = y_center;
    b.xi = s.grad[0];
    b.S = s.value;
    b.M = Complex(s.hess[0][0], 1.0);
    b.A = prob.a0<1>(y);
    return b;
}

namespace {

struct BeamRhs {
    double y, xi;
    Complex M, A;
};

bool beam_rhs(const Beam& b, double y, double xi, Complex M, Complex A, const SpeedField& speed,
              double p_min, BeamRhs& out) {
    (void)b;
    if (std::abs(xi) < p_min) return false;
    ScalarEval<1> c = speed.eval<1>(Vec<1>{y});
    double dir = xi > 0 ? 1.0 : -1.0;
    double axi = std::abs(xi);
    out.y = c.value * dir;
    out.xi = -c.grad[0] * axi;
    out.M = -2.0 * c.grad[0] * dir * M - c.hess[0][0] * axi;
    out.A = 0.5 * c.grad[0] * dir * A;
    return true;
}

}  // namespace

GbmCensus gbm_propagate(std::vector<Beam>& beams, const GbmSettings& cfg,
                        const SpeedField& speed) {
    if (!(cfg.dt > 0.0)) throw ProblemError("gbm dt must be positive");
    GbmCensus census;
    census.min_im_M = beams.empty() ? 0.0 : beams[0].M.imag();

    std::size_t nfull = static_cast<std::size_t>(std::floor(cfg.t_final / cfg.dt + 1e-12));
    double rem = cfg.t_final - static_cast<double>(nfull) * cfg.dt;
    if (rem < 1e-12 * cfg.dt) rem = 0.0;

    auto step_all = [&](double h) {
        for (Beam& b : beams) {
            if (!b.alive) continue;
            BeamRhs k1, k2, k3, k4;
            bool ok =
                beam_rhs(b, b.y, b.xi, b.M, b.A, speed, cfg.p_min, k1) &&
                beam_rhs(b, b.y + 0.5 * h * k1.y, b.xi + 0.5 * h * k1.xi, b.M + 0.5 * h * k1.M,
                         b.A + 0.5 * h * k1.A, speed, cfg.p_min, k2) &&
                beam_rhs(b, b.y + 0.5 * h * k2.y, b.xi + 0.5 * h * k2.xi, b.M + 0.5 * h * k2.M,
                         b.A + 0.5 * h * k2.A, speed, cfg.p_min, k3) &&
                beam_rhs(b, b.y + h * k3.y, b.xi + h * k3.xi, b.M + h * k3.M, b.A + h * k3.A,
                         speed, cfg.p_min, k4);
            if (!ok) {
                b.alive = false;
                continue;
            }
            b.y += h / 6.0 * (k1.y + 2.0 * (k2.y + k3.y) + k4.y);
            b.xi += h / 6.0 * (k1.xi + 2.0 * (k2.xi + k3.xi) + k4.xi);
            b.M += h / 6.0 * (k1.M + 2.0 * (k2.M + k3.M) + k4.M);
            b.A += h / 6.0 * (k1.A + 2.0 * (k2.A + k3.A) + k4.A);
            if (b.M.imag() < census.min_im_M) census.min_im_M = b.M.imag();
            if (b.M.imag() <= 0.0) census.im_M_loss = true;
        }
    };

    for (std::size_t s = 0; s < nfull; ++s) step_all(cfg.dt);
    if (rem > 0.0) step_all(rem);

    for (const Beam& b : beams)
        (b.alive ? census.alive : census.dead)++;
    return census;
}

GridField<1> gbm_reconstruct(const std::vector<Beam>& beams, const Grid<1>& grid, double eps,
                             double theta, double dy0) {
    GridField<1> field = GridField<1>::zeros(grid);
    const double pref = 1.0 / std::sqrt(2.0 * M_PI * eps);
    for (std::size_t n = 0; n < field.values.size(); ++n) {
        double x = grid.x0[0] + static_cast<double>(n) * grid.dx[0];
        Complex acc(0.0, 0.0);
        for (const Beam& b : beams) {
            if (!b.alive) continue;
            double w = x - b.y;
            if (std::abs(w) > theta) continue;
            Complex phase = Complex(0, 1) / eps *
                            (Complex(b.S, 0) + Complex(b.xi * w, 0) + 0.5 * b.M * w * w);
            acc += pref * b.A * std::exp(phase) * dy0;
        }
        field.values[n] = acc;
    }
    return field;
}

}  // namespace fga
