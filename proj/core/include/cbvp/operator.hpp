#pragma once

// The pseudoparabolic operator
//     (V u)(x) = D1^4 D2^4 u(x) + sum_{(i1,i2) != (4,4)} a_{i1,i2}(x) D1^i1 D2^i2 u(x)
// with measurable (possibly discontinuous) lower-order coefficients.

#include <array>
#include <cstddef>
#include <map>
#include <utility>
#include <variant>
#include <vector>

#include "cbvp/boundary_data.hpp"
#include "cbvp/expr.hpp"
#include "cbvp/grid.hpp"

namespace cbvp {

/// Analytic (step allowed) or node-sampled function of (x1, x2).
class Coefficient {
public:
    Coefficient() : repr_(expr::literal(0.0)) {}
    Coefficient(expr::Expr e);  // NOLINT(google-explicit-constructor)
    Coefficient(GridFunction2D samples);  // NOLINT(google-explicit-constructor)

    bool is_analytic() const noexcept { return std::holds_alternative<expr::Expr>(repr_); }
    const expr::Expr& expression() const { return std::get<expr::Expr>(repr_); }
    const GridFunction2D& samples() const { return std::get<GridFunction2D>(repr_); }

    /// Values at every node of `grid`. Sampled coefficients must live on `grid`.
    GridFunction2D on(const TensorGrid& grid) const;

private:
    std::variant<expr::Expr, GridFunction2D> repr_;
};

/// Sampled coefficients are looked up at their own nodes only; there is no interpolation.
double eval_coefficient(const Coefficient& c, double x1, double x2);

using Multi = std::pair<int, int>;

/// Lower-order coefficients a_{i1,i2}; absent entries are zero, a_{4,4} is fixed to 1.
class CoefficientSet {
public:
    void set(int i1, int i2, Coefficient c);
    bool has(int i1, int i2) const { return entries_.count({i1, i2}) != 0; }
    const Coefficient& get(int i1, int i2) const;
    const std::map<Multi, Coefficient>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }

    /// Samples every present coefficient on `grid`.
    std::map<Multi, GridFunction2D> on(const TensorGrid& grid) const;

private:
    std::map<Multi, Coefficient> entries_;
};

struct Problem {
    Domain dom;
    CoefficientSet coeffs;
    Coefficient rhs;  // Z_{4,4}
    NonClassicalData data;
};

/// d(i1, i2) approximates D1^i1 D2^i2 u on a common grid; d(0, 0) is u.
class Jet {
public:
    explicit Jet(TensorGrid grid);

    const TensorGrid& grid() const noexcept { return grid_; }
    const GridFunction2D& d(int i1, int i2) const { return d_[index(i1, i2)]; }
    GridFunction2D& d(int i1, int i2) { return d_[index(i1, i2)]; }

    /// Element-wise a * this + b * other.
    Jet combine(double a, const Jet& other, double b) const;

private:
    static std::size_t index(int i1, int i2);

    TensorGrid grid_;
    std::vector<GridFunction2D> d_;
};

double apply_operator(const Jet& jet, const CoefficientSet& coeffs, std::size_t i, std::size_t j);

struct ResidualReport {
    GridFunction2D r;
    double sup = 0.0;
    double lp = 0.0;
    double p = 2.0;
};

/// Discrete L_p norm with tensor trapezoid weights, (sum w |f|^p)^(1/p).
double lp_norm(const GridFunction2D& f, double p);

/// r = V u - Z_{4,4} evaluated from the jet's stored derivatives.
ResidualReport residual(const Jet& jet, const Problem& prob, double p = 2.0);

}  // namespace cbvp
