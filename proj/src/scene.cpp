#include "fga/scene.hpp"

#include <cmath>

namespace fga {

namespace {

// deterministic sample points for structural checks
double lcg_uniform(std::uint64_t& state) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(state >> 11) / 9007199254740992.0;  // [0,1)
}

}  // namespace

DifferentiableScalar DifferentiableScalar::build(const Expr& f, int d) {
    DifferentiableScalar r;
    r.value_ = f;
    r.d_ = d;
    if (f.max_axis() >= d)
        throw ProblemError("expression '" + f.str() + "' uses x" +
                           std::to_string(f.max_axis() + 1) + " but d = " + std::to_string(d));
    for (int i = 0; i < d; ++i) {
        r.grad_[i] = f.derivative(i, &r.warnings_);
        for (int j = 0; j < d; ++j) r.hess_[i][j] = r.grad_[i].derivative(j, &r.warnings_);
    }
    // Hessian symmetry check: both differentiation orders must evaluate
    // identically at sample points (skipping points outside the domain).
    std::uint64_t rng = 0x9e3779b97f4a7c15ULL;
    for (int s = 0; s < 16; ++s) {
        double pt[2] = {lcg_uniform(rng) * 2.0 - 1.0, lcg_uniform(rng) * 2.0 - 1.0};
        std::span<const double> x(pt, static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) {
                double hij, hji;
                try {
                    hij = r.hess_[i][j].eval(x);
                    hji = r.hess_[j][i].eval(x);
                } catch (const EvalDomainError&) {
                    continue;
                }
                double scale = 1.0 + std::abs(hij) + std::abs(hji);
                if (std::abs(hij - hji) > 1e-12 * scale)
                    throw ProblemError("Hessian asymmetry for '" + f.str() + "': d" +
                                       std::to_string(i + 1) + "d" + std::to_string(j + 1) +
                                       " != d" + std::to_string(j + 1) + "d" +
                                       std::to_string(i + 1));
            }
    }
    return r;
}

bool DifferentiableScalar::is_constant() const {
    for (int i = 0; i < d_; ++i)
        if (!(grad_[i].is_number() && grad_[i].number_value() == 0.0)) return false;
    return true;
}

std::optional<double> SpeedField::constant_value() const {
    if (!c_.is_constant()) return std::nullopt;
    double pt[2] = {0.0, 0.0};
    return c_.value_expr().eval(std::span<const double>(pt, static_cast<std::size_t>(c_.dim())));
}

void WaveProblem::validate() const {
    if (d != 1 && d != 2) throw ProblemError("dimension must be 1 or 2");
    if (!(epsilon > 0.0)) throw ProblemError("epsilon must be positive");
    if (!(box.volume() > 0.0)) throw ProblemError("domain box must have positive volume");
    if (speed.dim() != d || s0.dim() != d) throw ProblemError("field dimension mismatch");

    // |grad S0| >= p_min on the support of the data (sampled)
    const int n = d == 1 ? 512 : 64;
    double max_amp = 0.0;
    std::vector<std::array<double, 2>> pts;
    if (d == 1) {
        for (int i = 0; i <= n; ++i)
            pts.push_back({box.lo[0] + (box.hi[0] - box.lo[0]) * i / n, 0.0});
    } else {
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                pts.push_back({box.lo[0] + (box.hi[0] - box.lo[0]) * i / n,
                               box.lo[1] + (box.hi[1] - box.lo[1]) * j / n});
    }
    std::vector<double> amp(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) {
        std::span<const double> x(pts[k].data(), static_cast<std::size_t>(d));
        amp[k] = std::hypot(a0_re.eval(x), a0_im.eval(x)) +
                 std::hypot(b0_re.eval(x), b0_im.eval(x));
        max_amp = std::max(max_amp, amp[k]);
    }
    const double support_floor = 1e-8 * max_amp;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (amp[k] <= support_floor) continue;
        std::span<const double> x(pts[k].data(), static_cast<std::size_t>(d));
        double g2 = 0.0;
        for (int i = 0; i < d; ++i) {
            double gi = s0.grad_expr(i).eval(x);
            g2 += gi * gi;
        }
        if (std::sqrt(g2) < p_min)
            throw ProblemError("|grad S0| < p_min on the support of the initial data (at x1 = " +
                               std::to_string(pts[k][0]) + ")");
    }
}

}  // namespace fga
