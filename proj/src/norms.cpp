#include "fga/norms.hpp"

#include <cmath>

namespace fga {

OrderFit convergence_order(const std::vector<std::pair<double, double>>& eps_err) {
    if (eps_err.size() < 2)
        throw std::invalid_argument("convergence_order needs at least two points");
    double sx = 0, sy = 0;
    for (auto& [e, v] : eps_err) {
        if (!(e > 0) || !(v > 0))
            throw std::invalid_argument("convergence_order needs positive eps and errors");
        sx += std::log(e);
        sy += std::log(v);
    }
    const double n = static_cast<double>(eps_err.size());
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (auto& [e, v] : eps_err) {
        double dx = std::log(e) - mx, dy = std::log(v) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    OrderFit fit;
    fit.slope = sxy / sxx;
    double ssres = 0, resmax = 0;
    for (auto& [e, v] : eps_err) {
        double pred = my + fit.slope * (std::log(e) - mx);
        double r = std::log(v) - pred;
        ssres += r * r;
        resmax = std::max(resmax, std::abs(r));
    }
    fit.residual = resmax;
    fit.r2 = syy > 0 ? 1.0 - ssres / syy : 1.0;
    fit.flagged = fit.r2 < 0.95;
    return fit;
}

}  // namespace fga
