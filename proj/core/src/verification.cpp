#include "cbvp/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace cbvp {

using expr::Expr;
using expr::Var;

namespace {

// Symbolic D1^i1 D2^i2 u for 0 <= i1, i2 <= 4, row-major.
std::array<Expr, 25> derivative_table(const Expr& u) {
    if (expr::contains_step(u)) {
        throw UnsupportedDerivative("manufactured solution '" + expr::print(u) + "' contains step()");
    }
    std::array<Expr, 25> d;
    Expr row = u;
    for (int i1 = 0; i1 <= 4; ++i1) {
        Expr e = row;
        for (int i2 = 0; i2 <= 4; ++i2) {
            d[i1 * 5 + i2] = e;
            e = expr::derive(e, Var::X2);
        }
        row = expr::derive(row, Var::X1);
    }
    return d;
}

}  // namespace

Jet exact_jet(const Expr& u, const TensorGrid& grid) {
    const auto table = derivative_table(u);
    Jet jet(grid);
    for (int i1 = 0; i1 <= 4; ++i1) {
        for (int i2 = 0; i2 <= 4; ++i2) {
            auto& d = jet.d(i1, i2);
            for (std::size_t i = 0; i < grid.n1(); ++i) {
                for (std::size_t j = 0; j < grid.n2(); ++j) d(i, j) = expr::eval(table[i1 * 5 + i2], grid.g1()[i], grid.g2()[j]);
            }
        }
    }
    return jet;
}

Manufactured manufacture(const MmsCase& mms, const TensorGrid& grid) {
    grid.require_spans(mms.dom);
    const auto table = derivative_table(mms.u_exact);
    Jet exact = exact_jet(mms.u_exact, grid);

    bool all_analytic = true;
    for (const auto& [k, c] : mms.coeffs.entries()) all_analytic = all_analytic && c.is_analytic();

    Coefficient rhs;
    if (all_analytic) {
        Expr r = table[24];
        for (const auto& [k, c] : mms.coeffs.entries()) r = r + c.expression() * table[k.first * 5 + k.second];
        rhs = Coefficient(r);
    } else {
        GridFunction2D r = exact.d(4, 4);
        for (const auto& [k, c] : mms.coeffs.on(grid)) {
            const auto& dk = exact.d(k.first, k.second);
            for (std::size_t n = 0; n < r.values().size(); ++n) r.values()[n] += c.values()[n] * dk.values()[n];
        }
        rhs = Coefficient(std::move(r));
    }

    const ClassicalData cd = sample_classical_from_field(mms.u_exact, mms.dom);
    NonClassicalData nc = classical_to_nonclassical(cd, mms.dom.h1, 1e-9);
    return Manufactured{Problem{mms.dom, mms.coeffs, std::move(rhs), std::move(nc)}, std::move(exact)};
}

std::optional<double> observed_order(double err_coarse, double err_fine, double h_coarse, double h_fine) {
    if (!(err_coarse > kOrderErrorFloor) || !(err_fine > kOrderErrorFloor)) return std::nullopt;
    return std::log(err_coarse / err_fine) / std::log(h_coarse / h_fine);
}

std::vector<ConvergenceRow> convergence_study(const MmsCase& mms, const std::vector<std::size_t>& sizes,
                                              const SolverOptions& opts) {
    if (sizes.size() < 3) throw InvalidArgument("convergence_study: need at least three grid sizes");
    for (std::size_t k = 1; k < sizes.size(); ++k) {
        if (sizes[k] <= sizes[k - 1]) throw InvalidArgument("convergence_study: grid sizes must increase strictly");
    }
    std::vector<ConvergenceRow> rows;
    for (std::size_t n : sizes) {
        const auto grid = TensorGrid::uniform(mms.dom, n, n);
        const auto m = manufacture(mms, grid);
        SolveResult res{Jet(grid), {}};
        try {
            res = solve(m.problem, grid, opts);
        } catch (const ConvergenceFailure& e) {
            throw StudyFailure(n, e.what());
        } catch (const SingularMarch& e) {
            throw StudyFailure(n, e.what());
        }
        GridFunction2D err = res.jet.d(0, 0);
        const auto& ex = m.exact.d(0, 0);
        for (std::size_t k = 0; k < err.values().size(); ++k) err.values()[k] -= ex.values()[k];

        ConvergenceRow row;
        row.n = n;
        row.h = std::max(grid.g1().max_spacing(), grid.g2().max_spacing());
        row.sup_err = err.sup_norm();
        row.l2_err = lp_norm(err, 2.0);
        row.stats = res.stats;
        if (!rows.empty()) row.order = observed_order(rows.back().sup_err, row.sup_err, rows.back().h, row.h);
        rows.push_back(row);
    }
    return rows;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
    std::ostringstream os;
    os << "size,sup_err,l2_err,order\n";
    for (const auto& r : rows) {
        os << r.n << ',' << format_real(r.sup_err) << ',' << format_real(r.l2_err) << ','
           << (r.order ? format_real(*r.order) : std::string("n/a")) << '\n';
    }
    return os.str();
}

std::string convergence_text(const std::vector<ConvergenceRow>& rows) {
    std::ostringstream os;
    char line[160];
    std::snprintf(line, sizeof line, "%6s %12s %14s %14s %8s %6s\n", "n", "h", "sup error", "L2 error", "order", "iters");
    os << line;
    for (const auto& r : rows) {
        char ord[16] = "n/a";
        if (r.order) std::snprintf(ord, sizeof ord, "%.3f", *r.order);
        std::snprintf(line, sizeof line, "%6zu %12.5e %14.6e %14.6e %8s %6d\n", r.n, r.h, r.sup_err, r.l2_err, ord,
                      r.stats.iterations);
        os << line;
    }
    return os.str();
}

double EquivalenceReport::max_deviation() const noexcept {
    double m = 0.0;
    for (int k = 0; k < 4; ++k) m = std::max({m, phi_dev[k], psi_dev[k]});
    return m;
}

std::string EquivalenceReport::render_text() const {
    std::ostringstream os;
    char line[128];
    for (int k = 0; k < 4; ++k) {
        std::snprintf(line, sizeof line, "phi%d  max deviation %.6e  %s\n", k + 1, phi_dev[k],
                      phi_dev[k] <= tol ? "PASS" : "FAIL");
        os << line;
    }
    for (int k = 0; k < 4; ++k) {
        std::snprintf(line, sizeof line, "psi%d  max deviation %.6e  %s\n", k + 1, psi_dev[k],
                      psi_dev[k] <= tol ? "PASS" : "FAIL");
        os << line;
    }
    os << "agreement of reconstructed data: " << (agreement.pass ? "PASS" : "FAIL") << '\n';
    return os.str();
}

EquivalenceReport trace_check(const ClassicalData& cd, const Jet& jet, const Domain& dom, double tol) {
    const auto& grid = jet.grid();
    if (!grid.spans(dom)) throw InvalidArgument("trace_check: jet grid does not span the domain");
    cd.validate(dom);
    EquivalenceReport rep;
    rep.tol = tol;
    const std::size_t top = grid.n1() - 1;
    for (int k = 0; k < 4; ++k) {
        const auto phi = cd.phi[k].sample(grid.g2());
        const auto psi = cd.psi[k].sample(grid.g1());
        double dp = 0.0;
        for (std::size_t j = 0; j < grid.n2(); ++j) dp = std::max(dp, std::abs(jet.d(k, 0)(top, j) - phi[j]));
        double ds = 0.0;
        for (std::size_t i = 0; i < grid.n1(); ++i) ds = std::max(ds, std::abs(jet.d(0, k)(i, 0) - psi[i]));
        rep.phi_dev[k] = dp;
        rep.psi_dev[k] = ds;
    }
    rep.traces_pass = rep.max_deviation() <= tol;
    rep.agreement = check_agreement(cd, dom.h1, tol);
    rep.pass = rep.traces_pass && rep.agreement.pass;
    return rep;
}

EquivalenceReport equivalence_check(const Problem& prob, const Jet& jet, double tol) {
    if (!jet.grid().spans(prob.dom)) throw InvalidArgument("equivalence_check: jet grid does not span the domain");
    const ClassicalData cd = nonclassical_to_classical(prob.data, prob.dom, jet.grid());
    return trace_check(cd, jet, prob.dom, tol);
}

double boundary_reproduction_error(const Jet& jet, const NonClassicalData& nc, const Domain& dom) {
    const auto& grid = jet.grid();
    grid.require_spans(dom);
    const std::size_t top = grid.n1() - 1;
    double e = 0.0;
    for (int i1 = 0; i1 < 4; ++i1) {
        for (int i2 = 0; i2 < 4; ++i2) e = std::max(e, std::abs(jet.d(i1, i2)(top, 0) - nc.corner[i1][i2]));
    }
    for (int k = 0; k < 4; ++k) {
        const auto z1 = nc.edge_x1[k].sample(grid.g1());
        for (std::size_t i = 0; i < grid.n1(); ++i) e = std::max(e, std::abs(jet.d(4, k)(i, 0) - z1[i]));
        const auto z2 = nc.edge_x2[k].sample(grid.g2());
        for (std::size_t j = 0; j < grid.n2(); ++j) e = std::max(e, std::abs(jet.d(k, 4)(top, j) - z2[j]));
    }
    return e;
}

}  // namespace cbvp
