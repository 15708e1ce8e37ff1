#pragma once

// Classical and non-classical contact-boundary data on the edges x1 = h1 and
// x2 = 0, the sixteen corner agreement conditions, and the conversions
// between the two treatments.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cbvp/errors.hpp"
#include "cbvp/expr.hpp"
#include "cbvp/grid.hpp"

namespace cbvp {

/// Which side of the rectangle a 1-D function lives on: G1 = (0,h1) or G2 = (0,h2).
enum class Axis { X1, X2 };

const char* axis_name(Axis a) noexcept;

/// A function of one variable on G1 or G2, differentiable four times.
///
/// Three representations:
///  - analytic: a step-free expression in `t`; derivatives are symbolic.
///  - sampled: values on a Grid1D; derivatives by diff_sampled.
///  - taylor:  c0 + c1 (t-a) + c2 (t-a)^2/2! + c3 (t-a)^3/3! + int_a^t (t-s)^3/3! f(s) ds
///             with f sampled on a Grid1D and `a` an end of the axis. Derivatives of
///             order r <= 3 are the same form with the kernel degree lowered to 3 - r;
///             the fourth derivative is f.
class BoundaryFunction {
public:
    enum class Kind { Analytic, Sampled, Taylor };

    BoundaryFunction();  // analytic zero on G1

    static BoundaryFunction analytic(Axis axis, expr::Expr e);
    static BoundaryFunction sampled(Axis axis, Grid1D grid, std::vector<double> values);
    static BoundaryFunction taylor(Axis axis, double anchor, std::array<double, 4> coeffs, Grid1D grid,
                                   std::vector<double> density);
    static BoundaryFunction zero(Axis axis);

    Axis axis() const noexcept { return axis_; }
    Kind kind() const noexcept { return kind_; }

    const expr::Expr& expression() const { return expr_; }  // Analytic
    const std::optional<Grid1D>& grid() const noexcept { return grid_; }  // Sampled, Taylor
    const std::vector<double>& values() const noexcept { return values_; }  // Sampled: values, Taylor: density
    double anchor() const noexcept { return anchor_; }
    const std::array<double, 4>& coeffs() const noexcept { return coeffs_; }

    /// Derivative of order 0..4 at t. For the sampled kinds t must be a node.
    double derivative_at(int order, double t) const;

    /// Derivative of order 0..4 at every node of `grid`. For the sampled kinds
    /// `grid` must coincide with the function's own grid.
    std::vector<double> sample(const Grid1D& grid, int order = 0) const;

    /// The fourth derivative as a BoundaryFunction on the same axis.
    BoundaryFunction fourth_derivative() const;

    /// Throws InvalidArgument unless the function covers [0, length].
    void require_spans(double length, const std::string& what) const;

private:
    Axis axis_ = Axis::X1;
    Kind kind_ = Kind::Analytic;
    expr::Expr expr_;
    std::optional<Grid1D> grid_;
    std::vector<double> values_;
    double anchor_ = 0.0;
    std::array<double, 4> coeffs_{};
};

/// phi[k] = D1^k u on x1 = h1 (functions of x2); psi[k] = D2^k u on x2 = 0 (functions of x1).
struct ClassicalData {
    std::array<BoundaryFunction, 4> phi;
    std::array<BoundaryFunction, 4> psi;

    static ClassicalData zero();
    void validate(const Domain& dom) const;
};

/// corner[i1][i2] = D1^i1 D2^i2 u(h1, 0); edge_x1[i2] = D1^4 D2^i2 u(x1, 0);
/// edge_x2[i1] = D1^i1 D2^4 u(h1, x2).
struct NonClassicalData {
    std::array<std::array<double, 4>, 4> corner{};
    std::array<BoundaryFunction, 4> edge_x1;
    std::array<BoundaryFunction, 4> edge_x2;

    static NonClassicalData zero();
    void validate(const Domain& dom) const;
};

struct AgreementRecord {
    int index = 0;  // 1..16, row-major over (i1, i2)
    int i1 = 0;
    int i2 = 0;
    double lhs = 0.0;  // phi_{i1+1}^{(i2)}(0)
    double rhs = 0.0;  // psi_{i2+1}^{(i1)}(h1)
    double residual = 0.0;
    bool pass = true;

    std::string label() const;
};

struct AgreementReport {
    std::array<AgreementRecord, 16> records;
    double tol = 0.0;
    bool pass = true;

    int failures() const noexcept;
    std::string render_text() const;
    nlohmann::json to_json() const;
};

/// Thrown by classical_to_nonclassical when the corner conditions fail.
class InconsistentData : public std::runtime_error {
public:
    explicit InconsistentData(AgreementReport report);
    const AgreementReport& report() const noexcept { return report_; }

private:
    AgreementReport report_;
};

AgreementReport check_agreement(const ClassicalData& cd, double h1, double tol);

NonClassicalData classical_to_nonclassical(const ClassicalData& cd, double h1, double tol);

ClassicalData nonclassical_to_classical(const NonClassicalData& nc, const Domain& dom, const TensorGrid& out_grid);

/// Traces of a step-free field u(x1, x2) and its normal derivatives on the two
/// data edges, as analytic functions.
ClassicalData sample_classical_from_field(const expr::Expr& u, const Domain& dom);

}  // namespace cbvp
