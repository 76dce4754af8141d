#pragma once

#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fga {

// Thrown by parse_expression; offset is the byte position in the source.
struct ParseError : std::runtime_error {
    std::size_t offset;
    std::string expected;
    ParseError(std::string msg, std::size_t off, std::string exp)
        : std::runtime_error(std::move(msg)), offset(off), expected(std::move(exp)) {}
};

// Thrown on evaluation outside the analytic domain (division by zero,
// sqrt of a negative number, derivative of abs/sqrt at its kink).
struct EvalDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown by derivative() when a node has no symbolic derivative in this
// language (power with a non-constant exponent).
struct NonDifferentiableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Immutable expression tree over variables x1..xd. Safe to share and
// evaluate concurrently.
class Expr {
public:
    struct Node;  // defined in expr.cpp

    Expr();  // the constant 0

    static Expr number(double v);
    static Expr variable(int axis);  // 0-based

    double eval(std::span<const double> x) const;
    double eval1(double x1) const;
    double eval2(double x1, double x2) const;

    // Exact symbolic derivative with respect to x{axis+1}; constant-folds.
    // Appends a note per abs/sqrt node whose derivative has a kink, when
    // `notes` is given.
    Expr derivative(int axis, std::vector<std::string>* notes = nullptr) const;

    std::string str() const;

    bool is_number() const;
    double number_value() const;  // valid when is_number()
    bool contains_abs() const;
    int max_axis() const;  // largest variable index used, -1 if none

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;

    friend Expr operator+(const Expr&, const Expr&);
    friend Expr operator-(const Expr&, const Expr&);
    friend Expr operator*(const Expr&, const Expr&);
    friend Expr operator/(const Expr&, const Expr&);
    friend Expr operator-(const Expr&);
    friend Expr pow_expr(const Expr&, const Expr&);
    friend Expr fn_expr(const std::string& name, const Expr&);
    friend class Parser;
    friend struct ExprDetail;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow_expr(const Expr& base, const Expr& exponent);
Expr fn_expr(const std::string& name, const Expr& arg);  // sin cos exp sqrt abs

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := base ('^' factor)?
//   base   := number | ident | ident '(' expr ')' | '(' expr ')'
// Power binds tighter than unary minus: -x1^2 == -(x1^2).
// Identifiers: x1..x9, function names, and entries of `constants`
// (the harness binds "eps" and "pi").
Expr parse_expression(std::string_view src,
                      const std::map<std::string, double>& constants = {});

}  // namespace fga
