#pragma once

// Analytic expression language for coefficients, boundary functions and
// manufactured solutions.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' power)?          exponent must fold to an integer >= 0
//   atom    := number | x1 | x2 | t | fn '(' expr ')' | '(' expr ')'
//   fn      := sin | cos | exp | step
//
// step(e) is the Heaviside function, 1 for e >= 0 and 0 otherwise. It has no
// symbolic derivative.

#include <memory>
#include <string>
#include <string_view>

namespace cbvp::expr {

enum class Op { Literal, Variable, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Step };

enum class Var { X1, X2, T };

std::string_view var_name(Var v) noexcept;

class Node;

/// Immutable expression tree handle. Cheap to copy.
class Expr {
public:
    Expr();  // literal 0

    Op op() const noexcept;
    double value() const;   // Literal
    Var var() const;        // Variable
    int exponent() const;   // Pow
    const Expr& lhs() const;  // binary ops and Pow base
    const Expr& rhs() const;  // binary ops
    const Expr& arg() const;  // Neg, Sin, Cos, Exp, Step

    bool is_literal(double v) const noexcept;

    friend class Node;
    friend Expr literal(double);
    friend Expr variable(Var);
    friend Expr make_node(Op, Expr, Expr, int);

private:
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// Constructors. These fold constants and apply the 0/1 identities.
Expr literal(double v);
Expr variable(Var v);
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, int exponent);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr exp(const Expr& a);
Expr step(const Expr& a);

/// Throws ParseError with the byte offset of the first offending token.
Expr parse(std::string_view text);

/// Round-trippable text form: parse(print(e)) prints identically.
std::string print(const Expr& e);

struct Env {
    double x1;
    double x2;
    double t;
};

/// Throws EvalError on division by zero, an unbound variable (NaN binding)
/// or a non-finite intermediate value.
double eval(const Expr& e, const Env& env);
double eval(const Expr& e, double x1, double x2);
double eval_t(const Expr& e, double t);

/// Exact derivative. Throws UnsupportedDerivative when `step` is reached.
Expr derive(const Expr& e, Var v);
Expr derive(const Expr& e, Var v, int times);

/// Replace every occurrence of `v` by `replacement`, re-folding constants.
Expr substitute(const Expr& e, Var v, const Expr& replacement);

bool contains_step(const Expr& e) noexcept;
bool uses(const Expr& e, Var v) noexcept;

}  // namespace cbvp::expr
