#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fga/reconstruct.hpp"

using namespace fga;

namespace {

Atom<1> make_atom(double Q, double P, Complex a, Complex psi, double measure, int sign = +1) {
    Atom<1> atom;
    atom.sign = sign;
    atom.q = {Q};
    atom.p = {P};
    atom.Q = {Q};
    atom.P = {P};
    atom.a = a;
    atom.psi = psi;
    atom.measure = measure;
    return atom;
}

// reference sum: plain loop over all atoms in index order, with the same
// per-pair arithmetic as evaluate_field so only the bucketing is under test
template <int D>
GridField<D> brute_force_field(std::span<const Atom<D>> atoms, const Grid<D>& grid, double eps,
                               double theta) {
    GridField<D> field = GridField<D>::zeros(grid);
    const double norm_const = std::pow(2.0 * M_PI * eps, 1.5 * D);
    const double inv_eps = 1.0 / eps, inv_2eps = 0.5 / eps, theta2 = theta * theta;
    std::vector<Complex> coef(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i)
        coef[i] = atoms[i].a * atoms[i].psi * (atoms[i].measure / norm_const);
    for (std::size_t n = 0; n < field.values.size(); ++n) {
        Vec<D> x = grid.node(n);
        Complex acc(0, 0);
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            const Atom<D>& a = atoms[i];
            if (!a.alive) continue;
            Vec<D> w = x - a.Q;
            double r2 = norm2<D>(w);
            if (r2 > theta2) continue;
            acc += coef[i] * cexp_fast(-r2 * inv_2eps, dot<D>(a.P, w) * inv_eps);
        }
        field.values[n] = acc;
    }
    return field;
}

std::vector<Atom<2>> scattered_atoms_2d(int n) {
    std::vector<Atom<2>> atoms;
    std::uint64_t s = 12345;
    auto rnd = [&s] {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(s >> 11) / 9007199254740992.0;
    };
    for (int i = 0; i < n; ++i) {
        Atom<2> a;
        a.Q = {rnd() * 2 - 1, rnd() * 2 - 1};
        a.P = {rnd() + 0.5, rnd() - 0.5};
        a.a = Complex(rnd(), rnd());
        a.psi = Complex(rnd() - 0.5, rnd() - 0.5);
        a.measure = 0.01;
        atoms.push_back(a);
    }
    return atoms;
}

}  // namespace

TEST_CASE("zero atoms give the zero field") {
    Grid<1> grid{{0.0}, {0.01}, {101}};
    GridField<1> f = evaluate_field<1>({}, grid, 0.01, 0.5, 2);
    for (Complex v : f.values) CHECK(v == Complex(0, 0));
}

TEST_CASE("single synthetic atom reproduces the closed-form Gaussian") {
    const double eps = 1.0 / 64;
    Grid<1> grid{{-0.5}, {0.01}, {101}};
    Complex a(std::sqrt(2.0), 0.0);
    Complex psi = Complex(std::sqrt(2 * M_PI * eps), 0.0);
    double measure = 0.25;
    Atom<1> atom = make_atom(0.0, 1.0, a, psi, measure);
    GridField<1> f = evaluate_field<1>(std::span<const Atom<1>>(&atom, 1), grid, eps, 10.0, 1);
    const double norm_const = std::pow(2 * M_PI * eps, 1.5);
    for (std::size_t n = 0; n < f.values.size(); ++n) {
        double x = -0.5 + 0.01 * static_cast<double>(n);
        Complex expect = a * psi * (measure / norm_const) *
                         std::exp(Complex(-x * x / (2 * eps), x / eps));
        CHECK(std::abs(f.values[n] - expect) < 1e-14);
    }
    // peak at the atom center
    std::size_t peak = 0;
    for (std::size_t n = 0; n < f.values.size(); ++n)
        if (std::abs(f.values[n]) > std::abs(f.values[peak])) peak = n;
    CHECK(grid.node(peak)[0] == doctest::Approx(0.0));
}

TEST_CASE("bucketed sum equals brute force bit for bit") {
    const double eps = 0.02, theta = 0.4;
    std::vector<Atom<2>> atoms = scattered_atoms_2d(10);
    Grid<2> grid{{-1.0, -1.0}, {0.4, 0.4}, {5, 10}};
    GridField<2> fast = evaluate_field<2>(std::span<const Atom<2>>(atoms), grid, eps, theta, 2);
    GridField<2> ref = brute_force_field<2>(std::span<const Atom<2>>(atoms), grid, eps, theta);
    for (std::size_t n = 0; n < fast.values.size(); ++n) CHECK(fast.values[n] == ref.values[n]);

    // larger 1D instance
    std::vector<Atom<1>> line;
    for (int i = 0; i < 50; ++i)
        line.push_back(make_atom(-1.0 + 0.04 * i, 1.0, Complex(1, 0.3), Complex(0.5, -1), 0.1));
    Grid<1> g1{{-1.2}, {0.05}, {50}};
    GridField<1> f1 = evaluate_field<1>(std::span<const Atom<1>>(line), g1, eps, theta, 2);
    GridField<1> r1 = brute_force_field<1>(std::span<const Atom<1>>(line), g1, eps, theta);
    for (std::size_t n = 0; n < f1.values.size(); ++n) CHECK(f1.values[n] == r1.values[n]);
}

TEST_CASE("spatial_bucket lists exactly the theta-ball contributors") {
    std::vector<Atom<1>> atoms;
    for (int i = 0; i < 10; ++i) atoms.push_back(make_atom(0.1 * i, 1, {1, 0}, {1, 0}, 1));
    Grid<1> grid{{0.0}, {0.1}, {10}};

    SUBCASE("theta below half a cell isolates the coincident atom") {
        auto lists = spatial_bucket<1>(std::span<const Atom<1>>(atoms), grid, 0.04);
        for (std::size_t n = 0; n < lists.size(); ++n) {
            REQUIRE(lists[n].size() == 1);  // only the atom sitting on the node
            CHECK(lists[n][0] == static_cast<int>(n));
        }
    }
    SUBCASE("no atoms near any node gives empty lists") {
        std::vector<Atom<1>> far{make_atom(5.0, 1, {1, 0}, {1, 0}, 1)};
        auto lists = spatial_bucket<1>(std::span<const Atom<1>>(far), grid, 0.04);
        for (auto& l : lists) CHECK(l.empty());
    }
    SUBCASE("single atom contributes to every node in its ball") {
        std::vector<Atom<1>> one{make_atom(0.5, 1, {1, 0}, {1, 0}, 1)};
        auto lists = spatial_bucket<1>(std::span<const Atom<1>>(one), grid, 0.25);
        for (std::size_t n = 0; n < lists.size(); ++n) {
            double x = grid.node(n)[0];
            bool inside = std::abs(x - 0.5) <= 0.25;
            CHECK(lists[n].size() == (inside ? 1u : 0u));
        }
    }
    SUBCASE("dead atoms never contribute") {
        std::vector<Atom<1>> pair{make_atom(0.5, 1, {1, 0}, {1, 0}, 1),
                                  make_atom(0.5, 1, {1, 0}, {1, 0}, 1)};
        pair[1].alive = false;
        auto lists = spatial_bucket<1>(std::span<const Atom<1>>(pair), grid, 0.25);
        for (auto& l : lists)
            for (int idx : l) CHECK(idx == 0);
    }
}

TEST_CASE("enlarging theta from 6 to 8 sqrt(eps) changes the field by <= 1e-6 relative") {
    const double eps = 1.0 / 64;
    std::vector<Atom<1>> atoms;
    for (int i = 0; i < 20; ++i)
        atoms.push_back(make_atom(0.3 + 0.02 * i, 1.0, Complex(std::sqrt(2.0), 0.1),
                                  Complex(0.2, -0.1), 0.02));
    Grid<1> grid{{0.0}, {0.005}, {301}};
    GridField<1> f6 = evaluate_field<1>(std::span<const Atom<1>>(atoms), grid, eps,
                                        6 * std::sqrt(eps), 2);
    GridField<1> f8 = evaluate_field<1>(std::span<const Atom<1>>(atoms), grid, eps,
                                        8 * std::sqrt(eps), 2);
    double max_abs = 0, max_diff = 0;
    for (std::size_t n = 0; n < f6.values.size(); ++n) {
        max_abs = std::max(max_abs, std::abs(f8.values[n]));
        max_diff = std::max(max_diff, std::abs(f8.values[n] - f6.values[n]));
    }
    CHECK(max_diff <= 1e-6 * max_abs);
}

TEST_CASE("field is linear over disjoint atom-set unions") {
    const double eps = 0.02, theta = 0.5;
    std::vector<Atom<2>> all = scattered_atoms_2d(12);
    std::vector<Atom<2>> first(all.begin(), all.begin() + 7);
    std::vector<Atom<2>> second(all.begin() + 7, all.end());
    Grid<2> grid{{-1.0, -1.0}, {0.25, 0.25}, {9, 9}};
    GridField<2> fu = evaluate_field<2>(std::span<const Atom<2>>(all), grid, eps, theta, 2);
    GridField<2> fa = evaluate_field<2>(std::span<const Atom<2>>(first), grid, eps, theta, 2);
    GridField<2> fb = evaluate_field<2>(std::span<const Atom<2>>(second), grid, eps, theta, 2);
    double scale = 0;
    for (Complex v : fu.values) scale = std::max(scale, std::abs(v));
    for (std::size_t n = 0; n < fu.values.size(); ++n)
        CHECK(std::abs(fu.values[n] - (fa.values[n] + fb.values[n])) <= 1e-13 * (1 + scale));
}

TEST_CASE("field is bit-identical for any worker count") {
    const double eps = 0.02;
    std::vector<Atom<2>> atoms = scattered_atoms_2d(40);
    Grid<2> grid{{-1.0, -1.0}, {0.1, 0.1}, {21, 21}};
    GridField<2> f1 = evaluate_field<2>(std::span<const Atom<2>>(atoms), grid, eps, 0.45, 1);
    GridField<2> f2 = evaluate_field<2>(std::span<const Atom<2>>(atoms), grid, eps, 0.45, 2);
    GridField<2> f3 = evaluate_field<2>(std::span<const Atom<2>>(atoms), grid, eps, 0.45, 7);
    for (std::size_t n = 0; n < f1.values.size(); ++n) {
        CHECK(f1.values[n] == f2.values[n]);
        CHECK(f1.values[n] == f3.values[n]);
    }
}
