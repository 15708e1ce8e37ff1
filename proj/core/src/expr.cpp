#include "cbvp/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>

#include "cbvp/errors.hpp"

namespace cbvp::expr {

class Node {
public:
    Op op = Op::Literal;
    double value = 0.0;
    Var var = Var::X1;
    int exponent = 0;
    Expr a;
    Expr b;
};

// A null handle is the literal 0.
Expr::Expr() : node_(nullptr) {}

Op Expr::op() const noexcept { return node_ ? node_->op : Op::Literal; }
double Expr::value() const { return node_ ? node_->value : 0.0; }
Var Expr::var() const { return node_->var; }
int Expr::exponent() const { return node_->exponent; }
const Expr& Expr::lhs() const { return node_->a; }
const Expr& Expr::rhs() const { return node_->b; }
const Expr& Expr::arg() const { return node_->a; }

bool Expr::is_literal(double v) const noexcept { return op() == Op::Literal && value() == v; }

Expr make_node(Op op, Expr a, Expr b, int exponent) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    n->exponent = exponent;
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr literal(double v) {
    auto n = std::make_shared<Node>();
    n->op = Op::Literal;
    n->value = v;
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr variable(Var v) {
    auto n = std::make_shared<Node>();
    n->op = Op::Variable;
    n->var = v;
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

std::string_view var_name(Var v) noexcept {
    switch (v) {
        case Var::X1: return "x1";
        case Var::X2: return "x2";
        case Var::T: return "t";
    }
    return "?";
}

namespace {

bool is_lit(const Expr& e) { return e.op() == Op::Literal; }

// Folds only when the result stays finite.
bool fold(double v, Expr& out) {
    if (!std::isfinite(v)) return false;
    out = literal(v);
    return true;
}

}  // namespace

Expr operator+(const Expr& a, const Expr& b) {
    Expr r;
    if (is_lit(a) && is_lit(b) && fold(a.value() + b.value(), r)) return r;
    if (a.is_literal(0.0)) return b;
    if (b.is_literal(0.0)) return a;
    return make_node(Op::Add, a, b, 0);
}

Expr operator-(const Expr& a, const Expr& b) {
    Expr r;
    if (is_lit(a) && is_lit(b) && fold(a.value() - b.value(), r)) return r;
    if (b.is_literal(0.0)) return a;
    if (a.is_literal(0.0)) return -b;
    return make_node(Op::Sub, a, b, 0);
}

Expr operator*(const Expr& a, const Expr& b) {
    Expr r;
    if (is_lit(a) && is_lit(b) && fold(a.value() * b.value(), r)) return r;
    if (a.is_literal(0.0) || b.is_literal(0.0)) return literal(0.0);
    if (a.is_literal(1.0)) return b;
    if (b.is_literal(1.0)) return a;
    return make_node(Op::Mul, a, b, 0);
}

Expr operator/(const Expr& a, const Expr& b) {
    Expr r;
    if (is_lit(a) && is_lit(b) && b.value() != 0.0 && fold(a.value() / b.value(), r)) return r;
    if (b.is_literal(1.0)) return a;
    if (a.is_literal(0.0) && !(is_lit(b) && b.value() == 0.0)) return literal(0.0);
    return make_node(Op::Div, a, b, 0);
}

Expr operator-(const Expr& a) {
    if (is_lit(a)) return literal(-a.value());
    if (a.op() == Op::Neg) return a.arg();
    return make_node(Op::Neg, a, Expr(), 0);
}

Expr pow(const Expr& base, int exponent) {
    if (exponent < 0) throw InvalidArgument("pow: negative exponent");
    if (exponent == 0) return literal(1.0);
    if (exponent == 1) return base;
    Expr r;
    if (is_lit(base) && fold(std::pow(base.value(), static_cast<double>(exponent)), r)) return r;
    return make_node(Op::Pow, base, Expr(), exponent);
}

namespace {

Expr unary(Op op, const Expr& a, double (*f)(double)) {
    Expr r;
    if (is_lit(a) && fold(f(a.value()), r)) return r;
    return make_node(op, a, Expr(), 0);
}

double heaviside(double v) { return v >= 0.0 ? 1.0 : 0.0; }
double sin_d(double v) { return std::sin(v); }
double cos_d(double v) { return std::cos(v); }
double exp_d(double v) { return std::exp(v); }

}  // namespace

Expr sin(const Expr& a) { return unary(Op::Sin, a, sin_d); }
Expr cos(const Expr& a) { return unary(Op::Cos, a, cos_d); }
Expr exp(const Expr& a) { return unary(Op::Exp, a, exp_d); }
Expr step(const Expr& a) { return unary(Op::Step, a, heaviside); }

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    Expr parse_all() {
        Expr e = parse_expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr parse_expr() {
        Expr e = parse_term();
        for (;;) {
            if (accept('+')) {
                e = make_node(Op::Add, e, parse_term(), 0);
            } else if (accept('-')) {
                e = make_node(Op::Sub, e, parse_term(), 0);
            } else {
                return e;
            }
        }
    }

    Expr parse_term() {
        Expr e = parse_unary();
        for (;;) {
            if (accept('*')) {
                e = make_node(Op::Mul, e, parse_unary(), 0);
            } else if (accept('/')) {
                e = make_node(Op::Div, e, parse_unary(), 0);
            } else {
                return e;
            }
        }
    }

    Expr parse_unary() {
        if (accept('-')) return -parse_unary();
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_atom();
        if (!accept('^')) return base;
        skip_ws();
        const std::size_t at = pos_;
        Expr ex = fold_constant(parse_power());
        if (!is_lit(ex)) throw ParseError(at, "exponent must be a non-negative integer constant");
        const double v = ex.value();
        if (!(v >= 0.0) || v != std::floor(v) || v > 1024.0) {
            throw ParseError(at, "exponent must be a non-negative integer constant");
        }
        const int n = static_cast<int>(v);
        if (n == 0 || n == 1 || is_lit(base)) return pow(base, n);
        return make_node(Op::Pow, base, Expr(), n);
    }

    // Only literal-vs-literal power chains can appear here.
    static Expr fold_constant(const Expr& e) {
        if (e.op() == Op::Pow && is_lit(e.lhs())) return pow(e.lhs(), e.exponent());
        return e;
    }

    Expr parse_atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("expected a number, variable, function or '('");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (c == '(') {
            ++pos_;
            Expr e = parse_expr();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            const std::string_view id = s_.substr(start, pos_ - start);
            if (id == "x1") return variable(Var::X1);
            if (id == "x2") return variable(Var::X2);
            if (id == "t") return variable(Var::T);
            Op op;
            if (id == "sin") {
                op = Op::Sin;
            } else if (id == "cos") {
                op = Op::Cos;
            } else if (id == "exp") {
                op = Op::Exp;
            } else if (id == "step") {
                op = Op::Step;
            } else {
                pos_ = start;
                fail("unknown identifier '" + std::string(id) + "'");
            }
            if (!accept('(')) fail("expected '(' after " + std::string(id));
            Expr a = parse_expr();
            if (!accept(')')) fail("expected ')'");
            return make_node(op, a, Expr(), 0);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    Expr parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t n = digits();
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            n += digits();
        }
        if (n == 0) {
            pos_ = start;
            fail("malformed number");
        }
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            const std::size_t mark = pos_;
            ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            if (digits() == 0) {
                pos_ = mark;
                fail("malformed exponent in number");
            }
        }
        const std::string text(s_.substr(start, pos_ - start));
        return literal(std::strtod(text.c_str(), nullptr));
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Printer

namespace {

int precedence(const Expr& e) {
    switch (e.op()) {
        case Op::Add:
        case Op::Sub: return 1;
        case Op::Mul:
        case Op::Div: return 2;
        case Op::Neg: return 3;
        case Op::Pow: return 4;
        case Op::Literal: return e.value() < 0.0 || std::signbit(e.value()) ? 3 : 5;
        default: return 5;
    }
}

void print_to(std::string& out, const Expr& e);

void print_child(std::string& out, const Expr& e, int min_prec) {
    if (precedence(e) < min_prec) {
        out += '(';
        print_to(out, e);
        out += ')';
    } else {
        print_to(out, e);
    }
}

void print_to(std::string& out, const Expr& e) {
    switch (e.op()) {
        case Op::Literal: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", e.value());
            out += buf;
            return;
        }
        case Op::Variable: out += var_name(e.var()); return;
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div: {
            const int p = precedence(e);
            print_child(out, e.lhs(), p);
            const char* sym = e.op() == Op::Add ? " + " : e.op() == Op::Sub ? " - " : e.op() == Op::Mul ? "*" : "/";
            out += sym;
            print_child(out, e.rhs(), p + 1);
            return;
        }
        case Op::Neg:
            out += '-';
            print_child(out, e.arg(), 3);
            return;
        case Op::Pow:
            print_child(out, e.lhs(), 5);
            out += '^';
            out += std::to_string(e.exponent());
            return;
        case Op::Sin:
        case Op::Cos:
        case Op::Exp:
        case Op::Step: {
            out += e.op() == Op::Sin ? "sin(" : e.op() == Op::Cos ? "cos(" : e.op() == Op::Exp ? "exp(" : "step(";
            print_to(out, e.arg());
            out += ')';
            return;
        }
    }
}

}  // namespace

std::string print(const Expr& e) {
    std::string out;
    print_to(out, e);
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double checked(const Expr& e, double v) {
    if (!std::isfinite(v)) throw EvalError(print(e), "non-finite value");
    return v;
}

double eval_rec(const Expr& e, const Env& env) {
    switch (e.op()) {
        case Op::Literal: return e.value();
        case Op::Variable: {
            const double v = e.var() == Var::X1 ? env.x1 : e.var() == Var::X2 ? env.x2 : env.t;
            if (std::isnan(v)) throw EvalError(print(e), "unbound variable");
            return v;
        }
        case Op::Add: return checked(e, eval_rec(e.lhs(), env) + eval_rec(e.rhs(), env));
        case Op::Sub: return checked(e, eval_rec(e.lhs(), env) - eval_rec(e.rhs(), env));
        case Op::Mul: return checked(e, eval_rec(e.lhs(), env) * eval_rec(e.rhs(), env));
        case Op::Div: {
            const double num = eval_rec(e.lhs(), env);
            const double den = eval_rec(e.rhs(), env);
            if (den == 0.0) throw EvalError(print(e), "division by zero");
            return checked(e, num / den);
        }
        case Op::Pow: return checked(e, std::pow(eval_rec(e.lhs(), env), static_cast<double>(e.exponent())));
        case Op::Neg: return -eval_rec(e.arg(), env);
        case Op::Sin: return std::sin(eval_rec(e.arg(), env));
        case Op::Cos: return std::cos(eval_rec(e.arg(), env));
        case Op::Exp: return checked(e, std::exp(eval_rec(e.arg(), env)));
        case Op::Step: return heaviside(eval_rec(e.arg(), env));
    }
    return 0.0;
}

constexpr double kUnbound = std::numeric_limits<double>::quiet_NaN();

}  // namespace

double eval(const Expr& e, const Env& env) { return eval_rec(e, env); }
double eval(const Expr& e, double x1, double x2) { return eval_rec(e, Env{x1, x2, kUnbound}); }
double eval_t(const Expr& e, double t) { return eval_rec(e, Env{kUnbound, kUnbound, t}); }

// ---------------------------------------------------------------------------
// Differentiation and substitution

Expr derive(const Expr& e, Var v) {
    switch (e.op()) {
        case Op::Literal: return literal(0.0);
        case Op::Variable: return literal(e.var() == v ? 1.0 : 0.0);
        case Op::Add: return derive(e.lhs(), v) + derive(e.rhs(), v);
        case Op::Sub: return derive(e.lhs(), v) - derive(e.rhs(), v);
        case Op::Mul: return derive(e.lhs(), v) * e.rhs() + e.lhs() * derive(e.rhs(), v);
        case Op::Div: {
            const Expr dd = derive(e.rhs(), v);
            if (dd.is_literal(0.0)) return derive(e.lhs(), v) / e.rhs();
            return (derive(e.lhs(), v) * e.rhs() - e.lhs() * dd) / pow(e.rhs(), 2);
        }
        case Op::Pow: {
            const int n = e.exponent();
            return literal(static_cast<double>(n)) * pow(e.lhs(), n - 1) * derive(e.lhs(), v);
        }
        case Op::Neg: return -derive(e.arg(), v);
        case Op::Sin: return cos(e.arg()) * derive(e.arg(), v);
        case Op::Cos: return -(sin(e.arg()) * derive(e.arg(), v));
        case Op::Exp: return exp(e.arg()) * derive(e.arg(), v);
        case Op::Step: throw UnsupportedDerivative("step() has no classical derivative: '" + print(e) + "'");
    }
    return literal(0.0);
}

Expr derive(const Expr& e, Var v, int times) {
    if (times < 0) throw InvalidArgument("derive: negative order");
    Expr r = e;
    for (int k = 0; k < times; ++k) r = derive(r, v);
    return r;
}

Expr substitute(const Expr& e, Var v, const Expr& replacement) {
    switch (e.op()) {
        case Op::Literal: return e;
        case Op::Variable: return e.var() == v ? replacement : e;
        case Op::Add: return substitute(e.lhs(), v, replacement) + substitute(e.rhs(), v, replacement);
        case Op::Sub: return substitute(e.lhs(), v, replacement) - substitute(e.rhs(), v, replacement);
        case Op::Mul: return substitute(e.lhs(), v, replacement) * substitute(e.rhs(), v, replacement);
        case Op::Div: return substitute(e.lhs(), v, replacement) / substitute(e.rhs(), v, replacement);
        case Op::Pow: return pow(substitute(e.lhs(), v, replacement), e.exponent());
        case Op::Neg: return -substitute(e.arg(), v, replacement);
        case Op::Sin: return sin(substitute(e.arg(), v, replacement));
        case Op::Cos: return cos(substitute(e.arg(), v, replacement));
        case Op::Exp: return exp(substitute(e.arg(), v, replacement));
        case Op::Step: return step(substitute(e.arg(), v, replacement));
    }
    return e;
}

bool contains_step(const Expr& e) noexcept {
    switch (e.op()) {
        case Op::Literal:
        case Op::Variable: return false;
        case Op::Step: return true;
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div: return contains_step(e.lhs()) || contains_step(e.rhs());
        default: return contains_step(e.arg());
    }
}

bool uses(const Expr& e, Var v) noexcept {
    switch (e.op()) {
        case Op::Literal: return false;
        case Op::Variable: return e.var() == v;
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div: return uses(e.lhs(), v) || uses(e.rhs(), v);
        default: return uses(e.arg(), v);
    }
}

}  // namespace cbvp::expr
