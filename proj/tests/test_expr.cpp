#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "cbvp/errors.hpp"
#include "cbvp/expr.hpp"
#include "support/generators.hpp"

namespace cbvp::expr {
namespace {

TEST(Parse, AdditionBindsLooserThanMultiplication) {
    const Expr e = parse("x1 + 2*x2");
    ASSERT_EQ(e.op(), Op::Add);
    EXPECT_EQ(e.lhs().op(), Op::Variable);
    EXPECT_EQ(e.lhs().var(), Var::X1);
    ASSERT_EQ(e.rhs().op(), Op::Mul);
    EXPECT_TRUE(e.rhs().lhs().is_literal(2.0));
    EXPECT_EQ(e.rhs().rhs().var(), Var::X2);
}

TEST(Parse, PowerOfFunctionCall) {
    const Expr e = parse("sin(x1)^2");
    ASSERT_EQ(e.op(), Op::Pow);
    EXPECT_EQ(e.exponent(), 2);
    EXPECT_EQ(e.lhs().op(), Op::Sin);
    EXPECT_EQ(e.lhs().arg().var(), Var::X1);
}

TEST(Parse, UnaryMinusBelowPowerAndPowerRightAssociative) {
    EXPECT_DOUBLE_EQ(eval(parse("-x1^2"), 3.0, 0.0), -9.0);
    EXPECT_DOUBLE_EQ(eval(parse("2^3^2"), 0.0, 0.0), 512.0);
    EXPECT_DOUBLE_EQ(eval(parse(" 1 - 2 - 3 "), 0.0, 0.0), -4.0);
    EXPECT_DOUBLE_EQ(eval(parse("8/4/2"), 0.0, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(eval(parse("1.5e1*x2"), 0.0, 2.0), 30.0);
}

TEST(Parse, TruncatedInputReportsOffset) {
    try {
        parse("x1 +");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 4u);
    }
}

TEST(Parse, Malformed) {
    EXPECT_THROW(parse(""), ParseError);
    EXPECT_THROW(parse("x3"), ParseError);
    EXPECT_THROW(parse("(x1"), ParseError);
    EXPECT_THROW(parse("x1^2.5"), ParseError);
    EXPECT_THROW(parse("x1^x2"), ParseError);
    EXPECT_THROW(parse("x1^-1"), ParseError);
    EXPECT_THROW(parse("sin x1"), ParseError);
    EXPECT_THROW(parse("1e"), ParseError);
    EXPECT_THROW(parse("x1 x2"), ParseError);
    try {
        parse("x1 * foo(2)");
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 5u);
    }
}

TEST(Eval, Basics) {
    EXPECT_DOUBLE_EQ(eval(parse("x1 + 2*x2"), 1.0, 2.0), 5.0);
    EXPECT_EQ(eval(parse("step(x1 - 0.5)"), 0.25, 0.0), 0.0);
    EXPECT_EQ(eval(parse("step(x1 - 0.5)"), 0.5, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(eval_t(parse("t^3 - t"), 2.0), 6.0);
}

TEST(Eval, Errors) {
    EXPECT_THROW(eval(parse("1/x1"), 0.0, 0.0), EvalError);
    EXPECT_THROW(eval(parse("exp(x1)"), 1000.0, 0.0), EvalError);
    EXPECT_THROW(eval(parse("t"), 1.0, 1.0), EvalError);
    EXPECT_THROW(eval_t(parse("x1"), 1.0), EvalError);
    try {
        eval(parse("3 + 1/x1"), 0.0, 0.0);
    } catch (const EvalError& e) {
        EXPECT_EQ(e.node(), "1/x1");
    }
}

TEST(Derive, Examples) {
    EXPECT_DOUBLE_EQ(eval(derive(parse("x1^4"), Var::X1), 2.0, 0.0), 32.0);
    EXPECT_EQ(print(derive(parse("sin(x1)"), Var::X1)), "cos(x1)");
    EXPECT_TRUE(derive(parse("3.5"), Var::X1).is_literal(0.0));
    EXPECT_TRUE(derive(parse("x2^3 + 1"), Var::X1).is_literal(0.0));
    EXPECT_THROW(derive(parse("x1*step(x1)"), Var::X1), UnsupportedDerivative);
}

TEST(Derive, FourthDerivativeOfMonomial) {
    // D1^4 D2^4 of x1^4 x2^4 / 576 is 1.
    Expr u = parse("x1^4*x2^4/576");
    Expr d = derive(derive(u, Var::X1, 4), Var::X2, 4);
    EXPECT_NEAR(eval(d, 0.3, 0.7), 1.0, 1e-15);
    EXPECT_TRUE(derive(parse("x1^3*x2^5"), Var::X1, 4).is_literal(0.0));
}

TEST(Derive, AgreesWithCentredDifferences) {
    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> pt(0.0, 1.0);
    const double h = 1e-5;
    int checked = 0;
    for (int n = 0; n < 40; ++n) {
        const Expr e = testing::random_expr(rng, 4);
        for (Var v : {Var::X1, Var::X2}) {
            const Expr d = derive(e, v);
            for (int k = 0; k < 10; ++k) {
                const double a = pt(rng);
                const double b = pt(rng);
                const double fd = v == Var::X1 ? (eval(e, a + h, b) - eval(e, a - h, b)) / (2 * h)
                                               : (eval(e, a, b + h) - eval(e, a, b - h)) / (2 * h);
                EXPECT_NEAR(eval(d, a, b), fd, 1e-6) << print(e) << " at (" << a << ", " << b << ")";
                ++checked;
            }
        }
    }
    EXPECT_GE(checked, 400);
}

TEST(Print, ParsePrintParseIsFixedPoint) {
    std::mt19937 rng(7);
    for (int n = 0; n < 200; ++n) {
        const Expr e = testing::random_expr(rng, 5);
        const std::string once = print(e);
        const std::string twice = print(parse(once));
        EXPECT_EQ(once, twice);
        EXPECT_EQ(print(parse(twice)), twice);
    }
    for (const char* s : {"-x1^2", "(-2)^2*x1", "x1 - (x2 - 1)", "x1/(x2*3)", "-(x1 + x2)", "step(x1 - 0.5)*2",
                          "sin(x1)^2 + cos(x2)^3", "x1 - -3", "1e-05*x1"}) {
        const std::string p = print(parse(s));
        EXPECT_EQ(print(parse(p)), p) << s;
        for (double a : {0.3, 1.7}) EXPECT_DOUBLE_EQ(eval(parse(p), a, 0.4), eval(parse(s), a, 0.4)) << s;
    }
}

TEST(Eval, Deterministic) {
    std::mt19937 rng(99);
    for (int n = 0; n < 50; ++n) {
        const Expr e = testing::random_expr(rng, 4);
        const double a = eval(e, 0.123, 0.456);
        const double b = eval(parse(print(e)), 0.123, 0.456);
        EXPECT_EQ(std::memcmp(&a, &b, sizeof a), 0) << print(e);
    }
}

TEST(Substitute, FoldsConstants) {
    const Expr e = substitute(parse("x1*x2 + x1^2"), Var::X1, literal(2.0));
    EXPECT_FALSE(uses(e, Var::X1));
    EXPECT_DOUBLE_EQ(eval(e, 0.0, 3.0), 10.0);
    EXPECT_TRUE(substitute(parse("x1*x2"), Var::X2, literal(0.0)).is_literal(0.0));
    EXPECT_TRUE(contains_step(parse("1 + step(x2)")));
    EXPECT_FALSE(contains_step(parse("sin(x2)")));
}

}  // namespace
}  // namespace cbvp::expr
