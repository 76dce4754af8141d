#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fga/expr.hpp"
#include "fga/linalg.hpp"

namespace fga {

struct NonPositiveSpeedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ProblemError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <int D> struct ScalarEval {
    double value;
    Vec<D> grad;
    Mat<D> hess;
};

// A scalar expression together with its exact symbolic gradient and
// Hessian, differentiated once at construction. hess[i][j] is kept for
// all (i, j); symmetry is verified at build time on sample points.
class DifferentiableScalar {
public:
    DifferentiableScalar() = default;
    static DifferentiableScalar build(const Expr& f, int d);

    template <int D> ScalarEval<D> eval(const Vec<D>& x) const {
        ScalarEval<D> r;
        r.value = value_.eval(std::span<const double>(x.data(), D));
        for (int i = 0; i < D; ++i) {
            r.grad[i] = grad_[i].eval(std::span<const double>(x.data(), D));
            for (int j = 0; j < D; ++j)
                r.hess[i][j] = hess_[i][j].eval(std::span<const double>(x.data(), D));
        }
        return r;
    }

    const Expr& value_expr() const { return value_; }
    const Expr& grad_expr(int i) const { return grad_[i]; }
    const Expr& hess_expr(int i, int j) const { return hess_[i][j]; }
    int dim() const { return d_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    // true when the gradient folded to literal zeros (value independent of x)
    bool is_constant() const;

private:
    Expr value_;
    std::array<Expr, 2> grad_;
    std::array<std::array<Expr, 2>, 2> hess_;
    int d_ = 0;
    std::vector<std::string> warnings_;
};

// Wave speed c(x) > 0 with analytic first and second derivatives.
class SpeedField {
public:
    SpeedField() = default;
    explicit SpeedField(DifferentiableScalar c) : c_(std::move(c)) {}
    static SpeedField build(const Expr& c, int d) { return SpeedField(DifferentiableScalar::build(c, d)); }

    template <int D> ScalarEval<D> eval(const Vec<D>& x) const {
        ScalarEval<D> r = c_.eval<D>(x);
        if (!(r.value > 0.0)) {
            std::string where = "(";
            for (int i = 0; i < D; ++i) where += (i ? "," : "") + std::to_string(x[i]);
            throw NonPositiveSpeedError("wave speed c" + where + ") = " +
                                        std::to_string(r.value) + " is not positive");
        }
        return r;
    }

    const DifferentiableScalar& scalar() const { return c_; }
    std::optional<double> constant_value() const;
    int dim() const { return c_.dim(); }

private:
    DifferentiableScalar c_;
};

struct BoxDomain {
    int d = 1;
    Vec<2> lo{}, hi{};
    double volume() const {
        double v = 1;
        for (int i = 0; i < d; ++i) v *= hi[i] - lo[i];
        return v;
    }
};

// The wave problem: d, epsilon, domain, speed, and WKB initial data
// u0 = A0 e^{i S0 / eps}, dt u0 = (1/eps) B0 e^{i S0 / eps}.
struct WaveProblem {
    int d = 1;
    double epsilon = 0.0;
    BoxDomain box;
    SpeedField speed;
    DifferentiableScalar s0;
    Expr a0_re, a0_im, b0_re, b0_im;
    double p_min = 1e-6;

    template <int D> Complex a0(const Vec<D>& x) const {
        std::span<const double> s(x.data(), D);
        return Complex(a0_re.eval(s), a0_im.eval(s));
    }
    template <int D> Complex b0(const Vec<D>& x) const {
        std::span<const double> s(x.data(), D);
        return Complex(b0_re.eval(s), b0_im.eval(s));
    }
    template <int D> Complex u0(const Vec<D>& x) const {
        ScalarEval<D> s = s0.eval<D>(x);
        return a0<D>(x) * cexp_fast(0.0, s.value / epsilon);
    }
    template <int D> Complex dtu0(const Vec<D>& x) const {
        ScalarEval<D> s = s0.eval<D>(x);
        return (1.0 / epsilon) * b0<D>(x) * cexp_fast(0.0, s.value / epsilon);
    }

    // Checks d, epsilon, box volume, and |grad S0| >= p_min wherever the
    // initial amplitudes are non-negligible (sampled on a uniform grid).
    void validate() const;
};

}  // namespace fga
