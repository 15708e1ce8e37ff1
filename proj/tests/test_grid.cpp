#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "cbvp/errors.hpp"
#include "cbvp/grid.hpp"

namespace cbvp {
namespace {

std::vector<double> sampled(const Grid1D& g, double (*f)(double)) {
    std::vector<double> v(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) v[k] = f(g[k]);
    return v;
}

TEST(UniformGrid, FiveNodesOnUnitInterval) {
    const auto g = make_uniform_grid(5, 0.0, 1.0);
    const std::vector<double> expect{0.0, 0.25, 0.5, 0.75, 1.0};
    ASSERT_EQ(g.size(), 5u);
    for (std::size_t k = 0; k < 5; ++k) EXPECT_DOUBLE_EQ(g[k], expect[k]);
    EXPECT_EQ(g.lower(), 0.0);
    EXPECT_EQ(g.upper(), 1.0);
}

TEST(UniformGrid, RejectsDegenerateAndTooSmall) {
    EXPECT_THROW(make_uniform_grid(5, 0.0, 0.0), InvalidArgument);
    EXPECT_THROW(make_uniform_grid(3, 0.0, 1.0), InvalidArgument);
    EXPECT_THROW(make_uniform_grid(5, 1.0, 0.0), InvalidArgument);
    EXPECT_THROW(Grid1D({0.0, 0.5, 0.5, 0.7, 1.0}), InvalidArgument);
    EXPECT_THROW(Domain::make(0.0, 1.0), InvalidArgument);
}

TEST(QuadWeights, TrapezoidDefinition) {
    const auto g = make_uniform_grid(5, 0.0, 1.0);
    const double h = 0.25;
    const auto w = quad_weights(g, 4);
    const std::vector<double> expect{h / 2, h, h, h, h / 2};
    ASSERT_EQ(w.size(), 5u);
    for (std::size_t k = 0; k < 5; ++k) EXPECT_DOUBLE_EQ(w[k], expect[k]);

    const auto w0 = quad_weights(g, 0);
    ASSERT_EQ(w0.size(), 1u);
    EXPECT_EQ(w0[0], 0.0);

    const auto w1 = quad_weights(g, 1);
    ASSERT_EQ(w1.size(), 2u);
    EXPECT_DOUBLE_EQ(w1[0], h / 2);
    EXPECT_DOUBLE_EQ(w1[1], h / 2);

    EXPECT_THROW(quad_weights(g, 5), InvalidArgument);
}

TEST(QuadWeights, SumToIntervalLengthOnNonUniformGrid) {
    const Grid1D g({0.0, 0.1, 0.35, 0.4, 0.8, 1.3});
    for (std::size_t up = 0; up < g.size(); ++up) {
        double s = 0.0;
        for (double w : quad_weights(g, up)) s += w;
        EXPECT_NEAR(s, g[up] - g[0], 1e-15);
    }
}

TEST(KernelIntegral, ZeroIntegrand) {
    const auto g = make_uniform_grid(9, 0.0, 2.0);
    const std::vector<double> zero(g.size(), 0.0);
    for (int m = 0; m <= 3; ++m) {
        EXPECT_EQ(kernel_integral_1d(zero, g, m, std::size_t{8}, std::size_t{0}), 0.0);
        EXPECT_EQ(kernel_integral_1d(zero, g, m, std::size_t{2}, std::size_t{7}), 0.0);
    }
}

TEST(KernelIntegral, CubicKernelOfOneApproachesQuarticOver24) {
    // int_0^1 (1-t)^3/3! dt = 1/24
    const auto g = make_uniform_grid(257, 0.0, 1.0);
    const std::vector<double> one(g.size(), 1.0);
    const double h = 1.0 / 256;
    EXPECT_NEAR(kernel_integral_1d(one, g, 3, 1.0, 0.0), 1.0 / 24.0, h * h);
}

TEST(KernelIntegral, LinearIntegrandIsExact) {
    const auto g = make_uniform_grid(5, 0.0, 1.0);
    const auto f = sampled(g, [](double t) { return t; });
    EXPECT_DOUBLE_EQ(kernel_integral_1d(f, g, 0, 1.0, 0.0), 0.5);

    const Grid1D ng({0.0, 0.13, 0.4, 0.41, 0.9, 1.7});
    const auto p = sampled(ng, [](double t) { return 3.0 - 2.0 * t; });
    for (std::size_t x = 0; x < ng.size(); ++x) {
        const double X = ng[x];
        const double exact = 3.0 * X - X * X;
        EXPECT_NEAR(kernel_integral_1d(p, ng, 0, x, std::size_t{0}), exact, 1e-13 * std::max(1.0, std::abs(exact)));
    }
}

TEST(KernelIntegral, OffNodeLimitsRejected) {
    const auto g = make_uniform_grid(5, 0.0, 1.0);
    const std::vector<double> one(g.size(), 1.0);
    EXPECT_THROW(kernel_integral_1d(one, g, 1, 0.3, 0.0), InvalidArgument);
    EXPECT_THROW(kernel_integral_1d(one, g, 1, 1.0, 0.6), InvalidArgument);
}

TEST(KernelIntegral, OrientationAntisymmetry) {
    const Grid1D g({0.0, 0.2, 0.25, 0.6, 0.7, 1.0, 1.1});
    const auto f = sampled(g, [](double t) { return std::exp(t) - 3.0 * t * t; });
    // Degree 0: the integrand does not depend on x, so swapping the bounds negates.
    for (std::size_t a = 0; a < g.size(); ++a) {
        for (std::size_t b = 0; b < g.size(); ++b) {
            EXPECT_NEAR(kernel_integral_1d(f, g, 0, a, b), -kernel_integral_1d(f, g, 0, b, a), 1e-14);
        }
    }
    // Any degree: an integral taken downwards is minus the plain trapezoid sum upwards.
    for (int m = 0; m <= 3; ++m) {
        for (std::size_t x = 0; x < g.size(); ++x) {
            for (std::size_t o = x + 1; o < g.size(); ++o) {
                double up = 0.0;
                for (std::size_t k = x; k < o; ++k) {
                    const double gl = std::pow(g[x] - g[k], m) / std::tgamma(m + 1.0) * f[k];
                    const double gr = std::pow(g[x] - g[k + 1], m) / std::tgamma(m + 1.0) * f[k + 1];
                    up += 0.5 * (g[k + 1] - g[k]) * (gl + gr);
                }
                EXPECT_NEAR(kernel_integral_1d(f, g, m, x, o), -up, 1e-14);
            }
        }
    }
}

TEST(KernelIntegral, SecondOrderConvergenceForSine) {
    // int_0^x (x-t)^3/3! sin t dt = x^3/6 - x + sin x (fourfold antiderivative of sin vanishing at 0).
    auto exact = [](double x) { return x * x * x / 6.0 - x + std::sin(x); };
    std::vector<double> err;
    for (std::size_t n : {17u, 33u, 65u}) {
        const auto g = make_uniform_grid(n, 0.0, 2.0);
        const auto f = sampled(g, [](double t) { return std::sin(t); });
        double e = 0.0;
        for (std::size_t k = 0; k < n; ++k) e = std::max(e, std::abs(kernel_integral_1d(f, g, 3, k, std::size_t{0}) - exact(g[k])));
        err.push_back(e);
    }
    EXPECT_GE(std::log2(err[0] / err[1]), 1.9);
    EXPECT_GE(std::log2(err[1] / err[2]), 1.9);
}

TEST(DiffSampled, ConstantHasZeroDerivative) {
    const auto g = make_uniform_grid(7, -1.0, 2.0);
    const std::vector<double> c(g.size(), 4.2);
    for (double d : diff_sampled(c, g, 1)) EXPECT_NEAR(d, 0.0, 1e-13);
}

TEST(DiffSampled, ExactForQuadraticsFirstOrder) {
    const auto g = make_uniform_grid(9, 0.0, 1.0);
    const auto f = sampled(g, [](double t) { return t * t; });
    const auto d = diff_sampled(f, g, 1);
    for (std::size_t k = 0; k < g.size(); ++k) EXPECT_NEAR(d[k], 2.0 * g[k], 1e-13);

    const Grid1D ng({0.0, 0.1, 0.35, 0.4, 0.8, 1.3});
    const auto q = sampled(ng, [](double t) { return 1.0 - t + 2.0 * t * t; });
    const auto dq = diff_sampled(q, ng, 1);
    for (std::size_t k = 0; k < ng.size(); ++k) EXPECT_NEAR(dq[k], -1.0 + 4.0 * ng[k], 1e-12);
}

TEST(DiffSampled, LinearHasZeroSecondDerivative) {
    const auto g = make_uniform_grid(5, 0.0, 1.0);
    const auto f = sampled(g, [](double t) { return t; });
    for (double d : diff_sampled(f, g, 2)) EXPECT_NEAR(d, 0.0, 1e-12);
}

TEST(DiffSampled, RepeatedFirstOrderMatchesSecondOrder) {
    for (std::size_t n : {33u, 65u, 129u}) {
        const auto g = make_uniform_grid(n, 0.0, 1.0);
        const auto f = sampled(g, [](double t) { return std::sin(3.0 * t); });
        const auto twice = diff_sampled(diff_sampled(f, g, 1), g, 1);
        const auto direct = diff_sampled(f, g, 2);
        const double h = 1.0 / static_cast<double>(n - 1);
        for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(twice[k], direct[k], h * h);
    }
}

TEST(DiffSampled, ErrorsAndConvergence) {
    const auto g = make_uniform_grid(5, 0.0, 1.0);
    const std::vector<double> v(5, 1.0);
    EXPECT_THROW(diff_sampled(v, g, 0), InvalidArgument);
    EXPECT_THROW(diff_sampled(v, g, 5), InvalidArgument);
    EXPECT_THROW(diff_sampled(std::vector<double>(4, 1.0), g, 1), InvalidArgument);

    std::vector<double> err;
    for (std::size_t n : {33u, 65u, 129u}) {
        const auto gg = make_uniform_grid(n, 0.0, 1.0);
        const auto f = sampled(gg, [](double t) { return std::exp(t); });
        const auto d = diff_sampled(f, gg, 1);
        double e = 0.0;
        for (std::size_t k = 0; k < n; ++k) e = std::max(e, std::abs(d[k] - std::exp(gg[k])));
        err.push_back(e);
    }
    EXPECT_GE(std::log2(err[1] / err[2]), 1.9);
}

TEST(GridCsv, HeaderAndRoundTrip) {
    const auto dom = Domain::make(1.0, 2.0);
    GridFunction2D f(TensorGrid::uniform(dom, 5, 6));
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 6; ++j) f(i, j) = std::sin(0.1 + i) / 3.0 + j;
    }
    std::ostringstream os;
    write_csv(os, f);
    const std::string text = os.str();
    EXPECT_EQ(text.rfind("x1\\x2,0,0.40000000000000002,", 0), 0u);

    std::istringstream is(text);
    const auto back = read_csv(is);
    EXPECT_TRUE(back.grid() == f.grid());
    for (std::size_t k = 0; k < f.values().size(); ++k) EXPECT_EQ(back.values()[k], f.values()[k]);
}

TEST(GridCsv, RejectsMalformedInput) {
    std::istringstream bad("x1\\x2,0,1,2,3,4\n0,1,2\n");
    EXPECT_THROW(read_csv(bad), InvalidArgument);
    std::istringstream nohdr("a,b\n");
    EXPECT_THROW(read_csv(nohdr), InvalidArgument);
}

}  // namespace
}  // namespace cbvp
