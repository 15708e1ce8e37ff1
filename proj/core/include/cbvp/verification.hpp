#pragma once

// Manufactured solutions, grid-convergence studies and the numerical check
// that a solution of the non-classical problem also satisfies the classical
// edge conditions.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cbvp/boundary_data.hpp"
#include "cbvp/operator.hpp"
#include "cbvp/volterra_solver.hpp"

namespace cbvp {

struct MmsCase {
    expr::Expr u_exact;
    CoefficientSet coeffs;
    Domain dom;
};

struct Manufactured {
    Problem problem;
    Jet exact;
};

/// Exact jet D1^i1 D2^i2 u at the nodes of `grid`, by symbolic differentiation.
Jet exact_jet(const expr::Expr& u, const TensorGrid& grid);

/// Builds the problem whose exact solution is `case.u_exact`: Z_{4,4} = V u
/// (symbolic when every coefficient is analytic, node-wise otherwise) and the
/// non-classical data obtained from the classical traces of u.
Manufactured manufacture(const MmsCase& mms, const TensorGrid& grid);

struct ConvergenceRow {
    std::size_t n = 0;  // nodes per axis
    double h = 0.0;     // largest spacing
    double sup_err = 0.0;
    double l2_err = 0.0;
    std::optional<double> order;  // from the previous row; empty below the round-off floor
    SolveStats stats;
};

/// Errors at or below this are treated as round-off when estimating orders.
inline constexpr double kOrderErrorFloor = 1e-11;

std::optional<double> observed_order(double err_coarse, double err_fine, double h_coarse, double h_fine);

/// Solves the manufactured problem on uniform n x n grids for each size in
/// `sizes` (at least three, strictly increasing) and reports errors of u.
std::vector<ConvergenceRow> convergence_study(const MmsCase& mms, const std::vector<std::size_t>& sizes,
                                              const SolverOptions& opts);

std::string convergence_csv(const std::vector<ConvergenceRow>& rows);
std::string convergence_text(const std::vector<ConvergenceRow>& rows);

struct EquivalenceReport {
    std::array<double, 4> phi_dev{};  // max |d(k,0)(h1, .) - phi_{k+1}|
    std::array<double, 4> psi_dev{};  // max |d(0,k)(., 0) - psi_{k+1}|
    double tol = 0.0;
    bool traces_pass = true;
    AgreementReport agreement;
    bool pass = true;

    double max_deviation() const noexcept;
    std::string render_text() const;
};

/// Reconstructs the classical data from prob.data and compares them with the
/// jet's traces on x1 = h1 and x2 = 0.
EquivalenceReport equivalence_check(const Problem& prob, const Jet& jet, double tol);

/// Compares a jet's traces with explicitly given classical data.
EquivalenceReport trace_check(const ClassicalData& cd, const Jet& jet, const Domain& dom, double tol);

/// Largest deviation between the jet and the prescribed non-classical values:
/// 16 corner values, the edge functions along x2 = 0 and along x1 = h1.
double boundary_reproduction_error(const Jet& jet, const NonClassicalData& nc, const Domain& dom);

}  // namespace cbvp
