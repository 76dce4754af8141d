#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "fga/atom.hpp"
#include "fga/parallel.hpp"

namespace fga {

template <int D> struct Grid {
    Vec<D> x0{}, dx{};
    std::array<int, D> nx{};

    std::size_t size() const {
        std::size_t n = 1;
        for (int j = 0; j < D; ++j) n *= static_cast<std::size_t>(nx[j]);
        return n;
    }
    // flat index: axis 0 slowest, last axis fastest
    Vec<D> node(std::size_t flat) const {
        Vec<D> x;
        for (int j = D - 1; j >= 0; --j) {
            x[j] = x0[j] + static_cast<double>(flat % static_cast<std::size_t>(nx[j])) * dx[j];
            flat /= static_cast<std::size_t>(nx[j]);
        }
        return x;
    }
    double cell_measure() const {
        double m = 1;
        for (int j = 0; j < D; ++j) m *= dx[j];
        return m;
    }
    bool same_as(const Grid& o) const {
        for (int j = 0; j < D; ++j)
            if (x0[j] != o.x0[j] || dx[j] != o.dx[j] || nx[j] != o.nx[j]) return false;
        return true;
    }
};

template <int D> struct GridField {
    Grid<D> grid;
    std::vector<Complex> values;  // size = grid.size(), node order

    static GridField zeros(const Grid<D>& g) { return {g, std::vector<Complex>(g.size())}; }
};

namespace detail {

// Uniform cells of side >= theta over the grid box inflated by theta.
// Any node's theta-ball is covered by the 3^D block around its cell, so a
// per-cell merged candidate list (ascending atom index) serves every node
// of the cell.
template <int D> struct AtomCells {
    Vec<D> lo{};
    double cell = 0.0;
    std::array<int, D> ncell{};
    std::vector<std::vector<int>> merged;  // per cell, ascending atom indices

    std::size_t cell_count() const {
        std::size_t n = 1;
        for (int j = 0; j < D; ++j) n *= static_cast<std::size_t>(ncell[j]);
        return n;
    }
    int cell_of(const Vec<D>& x) const {
        std::size_t flat = 0;
        for (int j = 0; j < D; ++j) {
            int c = static_cast<int>(std::floor((x[j] - lo[j]) / cell));
            c = std::clamp(c, 0, ncell[j] - 1);
            flat = flat * static_cast<std::size_t>(ncell[j]) + static_cast<std::size_t>(c);
        }
        return static_cast<int>(flat);
    }
};

template <int D>
AtomCells<D> build_cells(std::span<const Atom<D>> atoms, const Grid<D>& grid, double theta) {
    AtomCells<D> cells;
    cells.cell = theta;
    for (int j = 0; j < D; ++j) {
        cells.lo[j] = grid.x0[j] - theta;
        double hi = grid.x0[j] + (grid.nx[j] - 1) * grid.dx[j] + theta;
        cells.ncell[j] = std::max(1, static_cast<int>(std::ceil((hi - cells.lo[j]) / theta)));
    }
    std::vector<std::vector<int>> bucket(cells.cell_count());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const Atom<D>& a = atoms[i];
        if (!a.alive) continue;
        bool inside = true;
        for (int j = 0; j < D; ++j) {
            double hi = cells.lo[j] + cells.ncell[j] * cells.cell;
            if (a.Q[j] < cells.lo[j] || a.Q[j] > hi) inside = false;
        }
        if (!inside) continue;  // cannot reach any node
        bucket[static_cast<std::size_t>(cells.cell_of(a.Q))].push_back(static_cast<int>(i));
    }
    // merge each cell's 3^D neighborhood into one ascending list
    cells.merged.resize(cells.cell_count());
    std::array<int, D> ci{};
    for (std::size_t flat = 0; flat < cells.cell_count(); ++flat) {
        std::size_t rem = flat;
        for (int j = D - 1; j >= 0; --j) {
            ci[j] = static_cast<int>(rem % static_cast<std::size_t>(cells.ncell[j]));
            rem /= static_cast<std::size_t>(cells.ncell[j]);
        }
        std::vector<int>& out = cells.merged[flat];
        std::array<int, D> nb{};
        int total = 1;
        for (int j = 0; j < D; ++j) total *= 3;
        for (int t = 0; t < total; ++t) {
            int rem2 = t;
            bool ok = true;
            std::size_t nflat = 0;
            for (int j = 0; j < D; ++j) {
                nb[j] = ci[j] + (rem2 % 3) - 1;
                rem2 /= 3;
                if (nb[j] < 0 || nb[j] >= cells.ncell[j]) ok = false;
            }
            if (!ok) continue;
            for (int j = 0; j < D; ++j)
                nflat = nflat * static_cast<std::size_t>(cells.ncell[j]) +
                        static_cast<std::size_t>(nb[j]);
            const std::vector<int>& src = bucket[nflat];
            out.insert(out.end(), src.begin(), src.end());
        }
        std::sort(out.begin(), out.end());
    }
    return cells;
}

}  // namespace detail

// Per-node contributor lists: node n lists exactly the alive atoms with
// |x_n - Q| <= theta, in ascending atom index. Intended for modest sizes;
// evaluate_field uses the shared cell structure instead of materializing.
template <int D>
std::vector<std::vector<int>> spatial_bucket(std::span<const Atom<D>> atoms, const Grid<D>& grid,
                                             double theta) {
    detail::AtomCells<D> cells = detail::build_cells<D>(atoms, grid, theta);
    std::vector<std::vector<int>> lists(grid.size());
    const double theta2 = theta * theta;
    for (std::size_t n = 0; n < grid.size(); ++n) {
        Vec<D> x = grid.node(n);
        for (int idx : cells.merged[static_cast<std::size_t>(cells.cell_of(x))]) {
            if (norm2<D>(x - atoms[static_cast<std::size_t>(idx)].Q) <= theta2)
                lists[n].push_back(idx);
        }
    }
    return lists;
}

// Step 4: cutoff Gaussian summation
//   u(x_n) = sum_atoms a psi r_theta(|x-Q|) / (2 pi eps)^{3d/2}
//            * exp{(i/eps) P.(x-Q) - |x-Q|^2/(2 eps)} * dq^d dp^d.
// Parallel over nodes; per node the contributions accumulate in ascending
// atom index, so the field is identical for any thread count and equals
// the brute-force sum bit for bit.
template <int D>
GridField<D> evaluate_field(std::span<const Atom<D>> atoms, const Grid<D>& grid, double eps,
                            double theta, int threads) {
    GridField<D> field = GridField<D>::zeros(grid);
    if (atoms.empty()) return field;

    std::vector<Complex> coef(atoms.size());
    const double norm_const = std::pow(2.0 * M_PI * eps, 1.5 * D);
    for (std::size_t i = 0; i < atoms.size(); ++i)
        coef[i] = atoms[i].a * atoms[i].psi * (atoms[i].measure / norm_const);

    detail::AtomCells<D> cells = detail::build_cells<D>(atoms, grid, theta);
    const double theta2 = theta * theta;
    const double inv_eps = 1.0 / eps;
    const double inv_2eps = 0.5 / eps;

    parallel_for(field.values.size(), threads, [&](std::size_t n) {
        Vec<D> x = grid.node(n);
        const std::vector<int>& cand = cells.merged[static_cast<std::size_t>(cells.cell_of(x))];
        Complex acc(0.0, 0.0);
        for (int idx : cand) {
            const Atom<D>& a = atoms[static_cast<std::size_t>(idx)];
            Vec<D> w = x - a.Q;
            double r2 = norm2<D>(w);
            if (r2 > theta2) continue;
            double phase = dot<D>(a.P, w) * inv_eps;
            acc += coef[static_cast<std::size_t>(idx)] * cexp_fast(-r2 * inv_2eps, phase);
        }
        field.values[n] = acc;
    });
    return field;
}

}  // namespace fga
