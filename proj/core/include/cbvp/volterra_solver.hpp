#pragma once

// Reduction of the non-classical problem to a two-dimensional Volterra
// equation of the second kind for v = D1^4 D2^4 u.
//
// Every mixed derivative of u splits into a data part fixed by the
// non-classical boundary values and an iterated integral of v, both anchored
// at the data corner (h1, 0):
//
//     D1^j1 D2^j2 u = P^(j1,j2) + K^(j1,j2) v,
//     K^(j1,j2) v (x) = int_{h1}^{x1} int_0^{x2} (x1-l)^(3-j1)/(3-j1)! (x2-s)^(3-j2)/(3-j2)! v(l,s) ds dl,
//
// where an index equal to 4 replaces the corresponding integral by evaluation
// at the upper limit. Substituting into the equation with a_{4,4} = 1 gives
//
//     v = Z_{4,4} - sum_{(i1,i2) != (4,4)} a_{i1,i2} (P^(i1,i2) + K^(i1,i2) v).

#include <array>
#include <vector>

#include "cbvp/boundary_data.hpp"
#include "cbvp/grid.hpp"
#include "cbvp/operator.hpp"

namespace cbvp {

enum class Method { Marching, Picard };

const char* method_name(Method m) noexcept;
Method parse_method(const std::string& name);

struct SolverOptions {
    Method method = Method::Marching;
    double tol = 1e-10;
    int max_iter = 200;
    double pivot_floor = 1e-8;

    void validate() const;
};

struct SolveStats {
    int iterations = 0;
    double update_norm = 0.0;
    double residual_norm = 0.0;  // sup |v - (Z44 - sum a (P + K v))|
    double wall_ms = 0.0;
};

struct SolveResult {
    Jet jet;
    SolveStats stats;
};

/// Trapezoid kernel weights along one axis. Entry (m, target, source) is the
/// signed weight of `source` in  int_{origin}^{x_target} (x_target - s)^m / m! f(s) ds,
/// origin being the first node (FromLower) or the last node (FromUpper).
class KernelTable {
public:
    enum class Origin { FromLower, FromUpper };

    KernelTable(const Grid1D& grid, Origin origin);

    std::size_t size() const noexcept { return n_; }
    double operator()(int m, std::size_t target, std::size_t source) const {
        return w_[(static_cast<std::size_t>(m) * n_ + target) * n_ + source];
    }
    /// First and last source index contributing to `target`.
    std::size_t first(std::size_t target) const noexcept { return origin_ == Origin::FromLower ? 0 : target; }
    std::size_t last(std::size_t target) const noexcept { return origin_ == Origin::FromLower ? target : n_ - 1; }

    /// (L^j f)(x_t) for every node t: the degree-(3-j) kernel integral for j <= 3, identity for j = 4.
    std::vector<double> apply(std::span<const double> f, int j) const;

private:
    std::size_t n_;
    Origin origin_;
    std::vector<double> w_;
};

/// Data part P^(j1,j2) of every mixed derivative, 0 <= j1, j2 <= 4.
Jet data_jet(const NonClassicalData& nc, const Domain& dom, const TensorGrid& grid);

/// K^(j1,j2) v for one index pair.
GridFunction2D kernel_apply(const GridFunction2D& v, int j1, int j2, const Domain& dom);

/// K^(j1,j2) v for all 25 index pairs, returned as a Jet (d(4,4) = v).
Jet kernel_apply_all(const GridFunction2D& v, const Domain& dom);

/// d(j1,j2) = P^(j1,j2) + K^(j1,j2) v; d(4,4) = v.
Jet assemble_jet(const NonClassicalData& nc, const GridFunction2D& v, const Domain& dom, const TensorGrid& grid);

/// Throws ConvergenceFailure (picard) or SingularMarch (marching).
SolveResult solve(const Problem& prob, const TensorGrid& grid, const SolverOptions& opts = {});

}  // namespace cbvp
