#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fga/reconstruct.hpp"

namespace fga {

struct GridMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ErrorNorms {
    double linf = 0.0;
    double l2 = 0.0;
};

enum class CompareMode { ComplexField, Amplitude };

// linf = max_n |u_n - v_n|; l2 = (sum_n |u_n - v_n|^2 prod_j dx_j)^{1/2}
// (grid-measure weighted; pass weighted = false for the bare root sum).
// Amplitude mode compares |u| against |v|.
template <int D>
ErrorNorms error_norms(const GridField<D>& u, const GridField<D>& v,
                       CompareMode mode = CompareMode::ComplexField, bool weighted = true) {
    if (!u.grid.same_as(v.grid) || u.values.size() != v.values.size())
        throw GridMismatchError("error_norms: fields live on different grids");
    double linf = 0.0, sum2 = 0.0;
    for (std::size_t n = 0; n < u.values.size(); ++n) {
        double d = mode == CompareMode::ComplexField
                       ? std::abs(u.values[n] - v.values[n])
                       : std::abs(std::abs(u.values[n]) - std::abs(v.values[n]));
        linf = std::max(linf, d);
        sum2 += d * d;
    }
    double w = weighted ? u.grid.cell_measure() : 1.0;
    return {linf, std::sqrt(sum2 * w)};
}

struct OrderFit {
    double slope = 0.0;
    double r2 = 1.0;          // coefficient of determination of the log-log fit
    double residual = 0.0;    // max |log e - fit|
    bool flagged = false;     // r2 < 0.95
};

// Least-squares slope of log(err) against log(eps).
OrderFit convergence_order(const std::vector<std::pair<double, double>>& eps_err);

}  // namespace fga
