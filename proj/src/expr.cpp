#include "fga/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace fga {

enum class Op { Num, Var, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Sqrt, Abs };

struct Expr::Node {
    Op op = Op::Num;
    double num = 0.0;
    int axis = 0;
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_num(double v) {
    auto n = std::make_shared<Expr::Node>();
    n->op = Op::Num;
    n->num = v;
    return n;
}

bool is_num(const NodePtr& n, double v) { return n->op == Op::Num && n->num == v; }

NodePtr make_node(Op op, NodePtr a, NodePtr b) {
    // constant folding: literal arithmetic and the obvious identities
    const bool an = a && a->op == Op::Num;
    const bool bn = b && b->op == Op::Num;
    switch (op) {
        case Op::Add:
            if (an && bn) return make_num(a->num + b->num);
            if (an && a->num == 0.0) return b;
            if (bn && b->num == 0.0) return a;
            break;
        case Op::Sub:
            if (an && bn) return make_num(a->num - b->num);
            if (bn && b->num == 0.0) return a;
            if (an && a->num == 0.0) return make_node(Op::Neg, b, nullptr);
            break;
        case Op::Mul:
            if (an && bn) return make_num(a->num * b->num);
            if ((an && a->num == 0.0) || (bn && b->num == 0.0)) return make_num(0.0);
            if (an && a->num == 1.0) return b;
            if (bn && b->num == 1.0) return a;
            break;
        case Op::Div:
            if (an && bn && b->num != 0.0) return make_num(a->num / b->num);
            if (an && a->num == 0.0 && !(bn && b->num == 0.0)) return make_num(0.0);
            if (bn && b->num == 1.0) return a;
            break;
        case Op::Pow:
            if (bn && b->num == 1.0) return a;
            if (bn && b->num == 0.0) return make_num(1.0);
            if (an && bn) return make_num(std::pow(a->num, b->num));
            break;
        case Op::Neg:
            if (an) return make_num(-a->num);
            if (a->op == Op::Neg) return a->a;
            break;
        default:
            break;
    }
    auto n = std::make_shared<Expr::Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

double eval_node(const Expr::Node* n, std::span<const double> x) {
    switch (n->op) {
        case Op::Num: return n->num;
        case Op::Var:
            if (n->axis < 0 || static_cast<std::size_t>(n->axis) >= x.size())
                throw EvalDomainError("variable x" + std::to_string(n->axis + 1) +
                                      " out of range for this dimension");
            return x[static_cast<std::size_t>(n->axis)];
        case Op::Add: return eval_node(n->a.get(), x) + eval_node(n->b.get(), x);
        case Op::Sub: return eval_node(n->a.get(), x) - eval_node(n->b.get(), x);
        case Op::Mul: return eval_node(n->a.get(), x) * eval_node(n->b.get(), x);
        case Op::Div: {
            double den = eval_node(n->b.get(), x);
            if (den == 0.0)
                throw EvalDomainError("division by zero while evaluating expression");
            return eval_node(n->a.get(), x) / den;
        }
        case Op::Pow: {
            double base = eval_node(n->a.get(), x);
            if (n->b->op == Op::Num) {
                double e = n->b->num;
                int ie = static_cast<int>(e);
                if (e == static_cast<double>(ie) && ie >= 0 && ie <= 8) {
                    double r = 1.0;
                    for (int i = 0; i < ie; ++i) r *= base;
                    return r;
                }
            }
            return std::pow(base, eval_node(n->b.get(), x));
        }
        case Op::Neg: return -eval_node(n->a.get(), x);
        case Op::Sin: return std::sin(eval_node(n->a.get(), x));
        case Op::Cos: return std::cos(eval_node(n->a.get(), x));
        case Op::Exp: return std::exp(eval_node(n->a.get(), x));
        case Op::Sqrt: {
            double v = eval_node(n->a.get(), x);
            if (v < 0.0) throw EvalDomainError("sqrt of negative value");
            return std::sqrt(v);
        }
        case Op::Abs: return std::abs(eval_node(n->a.get(), x));
    }
    throw EvalDomainError("corrupt expression node");
}

NodePtr diff_node(const NodePtr& n, int axis, std::vector<std::string>* notes);

NodePtr diff_node(const NodePtr& n, int axis, std::vector<std::string>* notes) {
    switch (n->op) {
        case Op::Num: return make_num(0.0);
        case Op::Var: return make_num(n->axis == axis ? 1.0 : 0.0);
        case Op::Add:
            return make_node(Op::Add, diff_node(n->a, axis, notes), diff_node(n->b, axis, notes));
        case Op::Sub:
            return make_node(Op::Sub, diff_node(n->a, axis, notes), diff_node(n->b, axis, notes));
        case Op::Mul:
            return make_node(Op::Add,
                             make_node(Op::Mul, diff_node(n->a, axis, notes), n->b),
                             make_node(Op::Mul, n->a, diff_node(n->b, axis, notes)));
        case Op::Div:
            // (u/v)' = (u'v - uv') / v^2
            return make_node(
                Op::Div,
                make_node(Op::Sub, make_node(Op::Mul, diff_node(n->a, axis, notes), n->b),
                          make_node(Op::Mul, n->a, diff_node(n->b, axis, notes))),
                make_node(Op::Pow, n->b, make_num(2.0)));
        case Op::Pow: {
            if (n->b->op != Op::Num)
                throw NonDifferentiableError(
                    "cannot differentiate a power with non-constant exponent (no log in "
                    "this language)");
            double c = n->b->num;
            // c * u^(c-1) * u'
            return make_node(Op::Mul, make_num(c),
                             make_node(Op::Mul, make_node(Op::Pow, n->a, make_num(c - 1.0)),
                                       diff_node(n->a, axis, notes)));
        }
        case Op::Neg: return make_node(Op::Neg, diff_node(n->a, axis, notes), nullptr);
        case Op::Sin:
            return make_node(Op::Mul, make_node(Op::Cos, n->a, nullptr),
                             diff_node(n->a, axis, notes));
        case Op::Cos:
            return make_node(Op::Neg,
                             make_node(Op::Mul, make_node(Op::Sin, n->a, nullptr),
                                       diff_node(n->a, axis, notes)),
                             nullptr);
        case Op::Exp:
            return make_node(Op::Mul, make_node(Op::Exp, n->a, nullptr),
                             diff_node(n->a, axis, notes));
        case Op::Sqrt: {
            auto du = diff_node(n->a, axis, notes);
            if (notes && !is_num(du, 0.0))
                notes->push_back("derivative of sqrt is undefined where its argument vanishes");
            // u' / (2 sqrt(u))
            return make_node(Op::Div, du,
                             make_node(Op::Mul, make_num(2.0), make_node(Op::Sqrt, n->a, nullptr)));
        }
        case Op::Abs: {
            auto du = diff_node(n->a, axis, notes);
            if (notes && !is_num(du, 0.0))
                notes->push_back("derivative of abs is undefined at the zero of its argument");
            // u * u' / abs(u); evaluating at the kink trips the division check
            return make_node(Op::Div, make_node(Op::Mul, n->a, du),
                             make_node(Op::Abs, n->a, nullptr));
        }
    }
    throw NonDifferentiableError("corrupt expression node");
}

int precedence(Op op) {
    switch (op) {
        case Op::Add:
        case Op::Sub: return 1;
        case Op::Mul:
        case Op::Div: return 2;
        case Op::Neg: return 3;
        case Op::Pow: return 4;
        default: return 5;
    }
}

void print_node(const Expr::Node* n, std::ostringstream& out, int parent_prec) {
    int prec = precedence(n->op);
    bool paren = prec < parent_prec;
    switch (n->op) {
        case Op::Num: {
            if (n->num < 0.0) {
                out << '(' << n->num << ')';
            } else {
                std::ostringstream tmp;
                tmp.precision(17);
                tmp << n->num;
                out << tmp.str();
            }
            return;
        }
        case Op::Var: out << 'x' << (n->axis + 1); return;
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div:
        case Op::Pow: {
            const char* sym = n->op == Op::Add ? "+"
                              : n->op == Op::Sub ? "-"
                              : n->op == Op::Mul ? "*"
                              : n->op == Op::Div ? "/"
                                                 : "^";
            if (paren) out << '(';
            print_node(n->a.get(), out, prec);
            out << sym;
            // - and / are left-associative; ^ is right-associative
            int rhs_prec = (n->op == Op::Pow) ? prec : prec + 1;
            print_node(n->b.get(), out, rhs_prec);
            if (paren) out << ')';
            return;
        }
        case Op::Neg:
            if (paren) out << '(';
            out << '-';
            print_node(n->a.get(), out, prec + 1);
            if (paren) out << ')';
            return;
        case Op::Sin:
        case Op::Cos:
        case Op::Exp:
        case Op::Sqrt:
        case Op::Abs: {
            const char* name = n->op == Op::Sin ? "sin"
                               : n->op == Op::Cos ? "cos"
                               : n->op == Op::Exp ? "exp"
                               : n->op == Op::Sqrt ? "sqrt"
                                                   : "abs";
            out << name << '(';
            print_node(n->a.get(), out, 0);
            out << ')';
            return;
        }
    }
}

bool contains_abs_node(const Expr::Node* n) {
    if (!n) return false;
    if (n->op == Op::Abs) return true;
    return contains_abs_node(n->a.get()) || contains_abs_node(n->b.get());
}

int max_axis_node(const Expr::Node* n) {
    if (!n) return -1;
    int m = n->op == Op::Var ? n->axis : -1;
    m = std::max(m, max_axis_node(n->a.get()));
    return std::max(m, max_axis_node(n->b.get()));
}

}  // namespace

Expr::Expr() : node_(make_num(0.0)) {}
Expr Expr::number(double v) { return Expr(make_num(v)); }

Expr Expr::variable(int axis) {
    auto n = std::make_shared<Node>();
    n->op = Op::Var;
    n->axis = axis;
    return Expr(std::move(n));
}

double Expr::eval(std::span<const double> x) const { return eval_node(node_.get(), x); }

double Expr::eval1(double x1) const {
    const double pt[1] = {x1};
    return eval_node(node_.get(), pt);
}

double Expr::eval2(double x1, double x2) const {
    const double pt[2] = {x1, x2};
    return eval_node(node_.get(), pt);
}

Expr Expr::derivative(int axis, std::vector<std::string>* notes) const {
    return Expr(diff_node(node_, axis, notes));
}

std::string Expr::str() const {
    std::ostringstream out;
    print_node(node_.get(), out, 0);
    return out.str();
}

bool Expr::is_number() const { return node_->op == Op::Num; }
double Expr::number_value() const { return node_->num; }
bool Expr::contains_abs() const { return contains_abs_node(node_.get()); }
int Expr::max_axis() const { return max_axis_node(node_.get()); }

Expr operator+(const Expr& a, const Expr& b) { return Expr(make_node(Op::Add, a.node_, b.node_)); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(make_node(Op::Sub, a.node_, b.node_)); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(make_node(Op::Mul, a.node_, b.node_)); }
Expr operator/(const Expr& a, const Expr& b) { return Expr(make_node(Op::Div, a.node_, b.node_)); }
Expr operator-(const Expr& a) { return Expr(make_node(Op::Neg, a.node_, nullptr)); }
Expr pow_expr(const Expr& a, const Expr& b) { return Expr(make_node(Op::Pow, a.node_, b.node_)); }

Expr fn_expr(const std::string& name, const Expr& arg) {
    Op op;
    if (name == "sin") op = Op::Sin;
    else if (name == "cos") op = Op::Cos;
    else if (name == "exp") op = Op::Exp;
    else if (name == "sqrt") op = Op::Sqrt;
    else if (name == "abs") op = Op::Abs;
    else throw ParseError("unknown function '" + name + "'", 0, "sin, cos, exp, sqrt, abs");
    return Expr(make_node(op, arg.node_, nullptr));
}

// ---- recursive descent parser ----

class Parser {
public:
    Parser(std::string_view src, const std::map<std::string, double>& consts)
        : src_(src), consts_(consts) {}

    Expr run() {
        Expr e = parse_expr();
        skip_ws();
        if (pos_ != src_.size())
            fail("unexpected trailing input", "end of input or an operator");
        return e;
    }

private:
    std::string_view src_;
    const std::map<std::string, double>& consts_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg, const std::string& expected) {
        throw ParseError(msg + " at byte " + std::to_string(pos_) + " (expected " + expected + ")",
                         pos_, expected);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    Expr parse_expr() {
        Expr e = parse_term();
        for (;;) {
            if (eat('+')) e = e + parse_term();
            else if (eat('-')) e = e - parse_term();
            else return e;
        }
    }

    Expr parse_term() {
        Expr e = parse_factor();
        for (;;) {
            if (eat('*')) e = e * parse_factor();
            else if (eat('/')) e = e / parse_factor();
            else return e;
        }
    }

    Expr parse_factor() {
        if (eat('-')) return -parse_factor();
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_base();
        if (eat('^')) return pow_expr(base, parse_factor());
        return base;
    }

    Expr parse_base() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input", "number, identifier or '('");
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = parse_expr();
            if (!eat(')')) fail("unbalanced parenthesis", "')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        fail(std::string("unexpected character '") + c + "'", "number, identifier or '('");
    }

    Expr parse_number() {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
            ++pos_;
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_++;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
            } else {
                pos_ = mark;  // the 'e' belonged to something else
            }
        }
        std::string text(src_.substr(start, pos_ - start));
        char* end = nullptr;
        double v = std::strtod(text.c_str(), &end);
        if (end != text.c_str() + text.size()) {
            pos_ = start;
            fail("malformed number '" + text + "'", "decimal number");
        }
        return Expr::number(v);
    }

    Expr parse_ident() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                      src_[pos_] == '_'))
            ++pos_;
        std::string name(src_.substr(start, pos_ - start));

        if (peek() == '(') {
            // function call
            ++pos_;
            Expr arg = parse_expr();
            if (eat(',')) {
                pos_ = start;
                fail("function '" + name + "' takes one argument", "')'");
            }
            if (!eat(')')) fail("unbalanced parenthesis in call to '" + name + "'", "')'");
            if (name != "sin" && name != "cos" && name != "exp" && name != "sqrt" &&
                name != "abs") {
                pos_ = start;
                fail("unknown function '" + name + "'", "sin, cos, exp, sqrt, abs");
            }
            return fn_expr(name, arg);
        }

        if (name.size() >= 2 && name[0] == 'x' &&
            std::isdigit(static_cast<unsigned char>(name[1])) && name.size() == 2) {
            int axis = name[1] - '1';
            if (axis < 0) {
                pos_ = start;
                fail("variables are x1..x9", "x1..x9");
            }
            return Expr::variable(axis);
        }

        auto it = consts_.find(name);
        if (it != consts_.end()) return Expr::number(it->second);

        pos_ = start;
        fail("unknown identifier '" + name + "'", "x1..x9, a bound constant, or a function name");
    }
};

Expr parse_expression(std::string_view src, const std::map<std::string, double>& constants) {
    return Parser(src, constants).run();
}

}  // namespace fga
