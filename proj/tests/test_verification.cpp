#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cbvp/errors.hpp"
#include "cbvp/verification.hpp"
#include "support/generators.hpp"

namespace cbvp {
namespace {

using expr::parse;

const Domain kUnit = Domain::make(1.0, 1.0);

double max_jet(const Jet& j) {
    double m = 0.0;
    for (int a = 0; a <= 4; ++a) {
        for (int b = 0; b <= 4; ++b) m = std::max(m, j.d(a, b).sup_norm());
    }
    return m;
}

TEST(Manufacture, ZeroField) {
    CoefficientSet cs;
    cs.set(1, 2, Coefficient(parse("step(x1 - 0.5) + x2")));
    const TensorGrid g = TensorGrid::uniform(kUnit, 9, 9);
    const Manufactured m = manufacture(MmsCase{parse("0"), cs, kUnit}, g);
    EXPECT_EQ(max_jet(m.exact), 0.0);
    EXPECT_EQ(m.problem.rhs.on(g).sup_norm(), 0.0);
    for (const auto& row : m.problem.data.corner) {
        for (double z : row) EXPECT_EQ(z, 0.0);
    }
}

TEST(Manufacture, BicubicWithUnitPotential) {
    CoefficientSet cs;
    cs.set(0, 0, Coefficient(parse("1")));
    const TensorGrid g = TensorGrid::uniform(kUnit, 9, 9);
    const Manufactured m = manufacture(MmsCase{parse("x1^3*x2^3"), cs, kUnit}, g);
    const GridFunction2D rhs = m.problem.rhs.on(g);
    for (std::size_t i = 0; i < 9; ++i) {
        for (std::size_t j = 0; j < 9; ++j) EXPECT_NEAR(rhs(i, j), std::pow(g.g1()[i] * g.g2()[j], 3), 1e-15);
    }
}

TEST(Manufacture, QuarticMonomialHasUnitRhs) {
    const TensorGrid g = TensorGrid::uniform(kUnit, 9, 9);
    const Manufactured m = manufacture(MmsCase{parse("x1^4*x2^4/576"), {}, kUnit}, g);
    const GridFunction2D rhs = m.problem.rhs.on(g);
    for (double v : rhs.values()) EXPECT_NEAR(v, 1.0, 1e-15);
    EXPECT_NEAR(m.problem.data.corner[3][0], 0.0, 1e-15);
    EXPECT_NEAR(m.problem.data.edge_x1[3].derivative_at(0, 0.5), 0.0, 1e-15);
    // Z_{3,4}(x2) = D1^3 D2^4 u (1, x2) = 24 * 24 / 576; Z_{4,3}(x1) = 24 * 24 x2 / 576 at x2 = 0.
    EXPECT_NEAR(m.problem.data.edge_x2[3].derivative_at(0, 0.5), 1.0, 1e-15);
}

TEST(Manufacture, SampledCoefficientMultipliesNodewise) {
    const TensorGrid g = TensorGrid::uniform(kUnit, 5, 5);
    GridFunction2D a(g);
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) a(i, j) = double(i + j);
    }
    CoefficientSet cs;
    cs.set(0, 0, Coefficient(a));
    const Manufactured m = manufacture(MmsCase{parse("x1 + x2"), cs, kUnit}, g);
    const GridFunction2D rhs = m.problem.rhs.on(g);
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(rhs(i, j), double(i + j) * (g.g1()[i] + g.g2()[j]), 1e-15);
    }
    EXPECT_THROW(manufacture(MmsCase{parse("step(x1)"), {}, kUnit}, g), UnsupportedDerivative);
}

TEST(ObservedOrder, FloorAndValue) {
    EXPECT_FALSE(observed_order(1e-12, 1e-13, 0.1, 0.05).has_value());
    EXPECT_NEAR(*observed_order(4e-4, 1e-4, 0.1, 0.05), 2.0, 1e-12);
}

TEST(ConvergenceStudy, BicubicIsExactWithStepCoefficients) {
    CoefficientSet cs;
    cs.set(0, 0, Coefficient(parse("1 + step(x1 - 0.5)")));
    cs.set(3, 3, Coefficient(parse("0.5")));
    cs.set(4, 0, Coefficient(parse("x2")));
    cs.set(3, 4, Coefficient(parse("step(x2 - 0.25)")));
    for (Method m : {Method::Marching, Method::Picard}) {
        SolverOptions o;
        o.method = m;
        const auto rows = convergence_study(MmsCase{parse("x1^3*x2^3 - 2*x1*x2^2 + 1"), cs, kUnit}, {9, 17, 33}, o);
        ASSERT_EQ(rows.size(), 3u);
        for (const auto& r : rows) {
            EXPECT_LE(r.sup_err, 1e-9) << method_name(m) << " n=" << r.n;
            EXPECT_FALSE(r.order.has_value());
        }
        EXPECT_NE(convergence_csv(rows).find("n/a"), std::string::npos);
    }
}

TEST(ConvergenceStudy, SmoothFieldIsSecondOrder) {
    CoefficientSet cs;
    cs.set(0, 0, Coefficient(parse("1")));
    for (Method m : {Method::Marching, Method::Picard}) {
        SolverOptions o;
        o.method = m;
        const auto rows = convergence_study(MmsCase{parse("sin(x1)*sin(x2)"), cs, kUnit}, {17, 33, 65}, o);
        ASSERT_TRUE(rows.back().order.has_value());
        EXPECT_GE(*rows.back().order, 1.9) << method_name(m);
        EXPECT_LT(rows[2].sup_err, rows[0].sup_err);
        const std::string csv = convergence_csv(rows);
        EXPECT_EQ(csv.substr(0, csv.find('\n')), "size,sup_err,l2_err,order");
    }
}

TEST(ConvergenceStudy, RejectsBadSizeLists) {
    const MmsCase c{parse("x1"), {}, kUnit};
    EXPECT_THROW(convergence_study(c, {17}, {}), InvalidArgument);
    EXPECT_THROW(convergence_study(c, {17, 33}, {}), InvalidArgument);
    EXPECT_THROW(convergence_study(c, {17, 17, 33}, {}), InvalidArgument);
}

TEST(ConvergenceStudy, SolverFailureNamesTheSize) {
    CoefficientSet cs;
    cs.set(3, 3, Coefficient(parse("5")));
    SolverOptions o;
    o.method = Method::Picard;
    o.max_iter = 2;
    try {
        convergence_study(MmsCase{parse("sin(x1)*sin(x2)"), cs, kUnit}, {9, 17, 33}, o);
        FAIL() << "expected StudyFailure";
    } catch (const StudyFailure& e) {
        EXPECT_EQ(e.size(), 9u);
    }
}

TEST(Equivalence, ZeroProblem) {
    const Problem prob{kUnit, {}, Coefficient(parse("0")), NonClassicalData::zero()};
    const TensorGrid g = TensorGrid::uniform(kUnit, 9, 9);
    const EquivalenceReport r = equivalence_check(prob, solve(prob, g).jet, 1e-8);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.max_deviation(), 0.0);
}

TEST(Equivalence, ManufacturedProblemWithJump) {
    CoefficientSet cs;
    cs.set(0, 0, Coefficient(parse("1 + step(x1 - 0.5)")));
    cs.set(2, 1, Coefficient(parse("cos(x2)")));
    const TensorGrid g = TensorGrid::uniform(kUnit, 33, 33);
    const Manufactured m = manufacture(MmsCase{parse("sin(x1)*exp(x2)"), cs, kUnit}, g);
    const double h = g.g1().max_spacing();
    const EquivalenceReport r = equivalence_check(m.problem, solve(m.problem, g).jet, std::max(1e-8, h * h));
    EXPECT_TRUE(r.pass) << r.render_text();
    EXPECT_TRUE(r.agreement.pass);
}

TEST(Equivalence, PureDataPath) {
    std::mt19937 rng(4242);
    const TensorGrid g = TensorGrid::uniform(kUnit, 33, 33);
    for (int n = 0; n < 5; ++n) {
        const Problem prob{kUnit, {}, Coefficient(parse("0")), testing::random_nonclassical(rng)};
        const Jet jet = solve(prob, g).jet;
        EXPECT_LE(boundary_reproduction_error(jet, prob.data, kUnit), 1e-12);
        const EquivalenceReport r = equivalence_check(prob, jet, 1e-10);
        EXPECT_TRUE(r.pass) << r.render_text();
    }
}

TEST(Equivalence, DetectsWrongTraces) {
    const TensorGrid g = TensorGrid::uniform(kUnit, 9, 9);
    const Manufactured m = manufacture(MmsCase{parse("x1*x2"), {}, kUnit}, g);
    ClassicalData cd = sample_classical_from_field(parse("x1*x2"), kUnit);
    EXPECT_TRUE(trace_check(cd, m.exact, kUnit, 1e-12).pass);
    cd.psi[1] = BoundaryFunction::analytic(Axis::X1, parse("2*t"));
    const EquivalenceReport r = trace_check(cd, m.exact, kUnit, 1e-12);
    EXPECT_FALSE(r.traces_pass);
    EXPECT_NEAR(r.psi_dev[1], 1.0, 1e-15);
    EXPECT_THROW(equivalence_check(m.problem, Jet(TensorGrid::uniform(Domain::make(2.0, 1.0), 9, 9)), 1e-8),
                 InvalidArgument);
}

}  // namespace
}  // namespace cbvp
