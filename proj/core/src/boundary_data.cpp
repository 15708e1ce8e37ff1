#include "cbvp/boundary_data.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace cbvp {

using expr::Expr;
using expr::Var;

const char* axis_name(Axis a) noexcept { return a == Axis::X1 ? "x1" : "x2"; }

BoundaryFunction::BoundaryFunction() = default;

BoundaryFunction BoundaryFunction::analytic(Axis axis, Expr e) {
    if (expr::contains_step(e)) {
        throw InvalidArgument("boundary function '" + expr::print(e) + "' must be step-free");
    }
    if (expr::uses(e, Var::X1) || expr::uses(e, Var::X2)) {
        throw InvalidArgument("boundary function '" + expr::print(e) + "' must be written in the edge variable t");
    }
    BoundaryFunction f;
    f.axis_ = axis;
    f.kind_ = Kind::Analytic;
    f.expr_ = std::move(e);
    return f;
}

BoundaryFunction BoundaryFunction::sampled(Axis axis, Grid1D grid, std::vector<double> values) {
    if (values.size() != grid.size()) throw InvalidArgument("sampled boundary function: value count does not match grid");
    for (double v : values) {
        if (!std::isfinite(v)) throw InvalidArgument("sampled boundary function: non-finite sample");
    }
    BoundaryFunction f;
    f.axis_ = axis;
    f.kind_ = Kind::Sampled;
    f.grid_ = std::move(grid);
    f.values_ = std::move(values);
    return f;
}

BoundaryFunction BoundaryFunction::taylor(Axis axis, double anchor, std::array<double, 4> coeffs, Grid1D grid,
                                          std::vector<double> density) {
    if (density.size() != grid.size()) throw InvalidArgument("taylor boundary function: density count does not match grid");
    const auto a = grid.index_of(anchor);
    if (a != 0 && a + 1 != grid.size()) throw InvalidArgument("taylor boundary function: anchor must be an end node");
    for (double c : coeffs) {
        if (!std::isfinite(c)) throw InvalidArgument("taylor boundary function: non-finite coefficient");
    }
    for (double v : density) {
        if (!std::isfinite(v)) throw InvalidArgument("taylor boundary function: non-finite density sample");
    }
    BoundaryFunction f;
    f.axis_ = axis;
    f.kind_ = Kind::Taylor;
    f.anchor_ = grid[a];
    f.coeffs_ = coeffs;
    f.grid_ = std::move(grid);
    f.values_ = std::move(density);
    return f;
}

BoundaryFunction BoundaryFunction::zero(Axis axis) { return analytic(axis, expr::literal(0.0)); }

namespace {

void check_order(int order) {
    if (order < 0 || order > 4) throw InvalidArgument("boundary function: derivative order must be in 0..4");
}

double taylor_derivative(const Grid1D& g, const std::vector<double>& density, const std::array<double, 4>& c,
                         double anchor, int order, std::size_t at) {
    if (order == 4) return density[at];
    const double dt = g[at] - anchor;
    double v = 0.0;
    for (int i = order; i < 4; ++i) v += scaled_power(dt, i - order) * c[i];
    return v + kernel_integral_1d(density, g, 3 - order, at, g.index_of(anchor));
}

}  // namespace

double BoundaryFunction::derivative_at(int order, double t) const {
    check_order(order);
    switch (kind_) {
        case Kind::Analytic: return expr::eval_t(expr::derive(expr_, Var::T, order), t);
        case Kind::Sampled: {
            const auto k = grid_->index_of(t);
            if (order == 0) return values_[k];
            return diff_sampled(values_, *grid_, order)[k];
        }
        case Kind::Taylor: return taylor_derivative(*grid_, values_, coeffs_, anchor_, order, grid_->index_of(t));
    }
    return 0.0;
}

std::vector<double> BoundaryFunction::sample(const Grid1D& grid, int order) const {
    check_order(order);
    if (kind_ == Kind::Analytic) {
        const Expr d = expr::derive(expr_, Var::T, order);
        std::vector<double> out(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k) out[k] = expr::eval_t(d, grid[k]);
        return out;
    }
    if (!grid_->same_nodes(grid)) {
        throw InvalidArgument(std::string("sampled boundary function on ") + axis_name(axis_) +
                              " does not live on the requested grid");
    }
    if (kind_ == Kind::Sampled) {
        return order == 0 ? values_ : diff_sampled(values_, *grid_, order);
    }
    std::vector<double> out(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) out[k] = taylor_derivative(*grid_, values_, coeffs_, anchor_, order, k);
    return out;
}

BoundaryFunction BoundaryFunction::fourth_derivative() const {
    switch (kind_) {
        case Kind::Analytic: return analytic(axis_, expr::derive(expr_, Var::T, 4));
        case Kind::Sampled: return sampled(axis_, *grid_, diff_sampled(values_, *grid_, 4));
        case Kind::Taylor: return sampled(axis_, *grid_, values_);
    }
    return *this;
}

void BoundaryFunction::require_spans(double length, const std::string& what) const {
    if (kind_ == Kind::Analytic) return;
    const double eps = 1e-12 * std::max(1.0, length);
    if (std::abs(grid_->lower()) > eps || std::abs(grid_->upper() - length) > eps) {
        throw InvalidArgument(what + ": samples must span [0, " + format_real(length) + "]");
    }
}

// ---------------------------------------------------------------------------

ClassicalData ClassicalData::zero() {
    ClassicalData cd;
    for (int k = 0; k < 4; ++k) {
        cd.phi[k] = BoundaryFunction::zero(Axis::X2);
        cd.psi[k] = BoundaryFunction::zero(Axis::X1);
    }
    return cd;
}

void ClassicalData::validate(const Domain& dom) const {
    for (int k = 0; k < 4; ++k) {
        const std::string pn = "phi" + std::to_string(k + 1);
        const std::string sn = "psi" + std::to_string(k + 1);
        if (phi[k].axis() != Axis::X2) throw InvalidArgument(pn + " must be a function of x2");
        if (psi[k].axis() != Axis::X1) throw InvalidArgument(sn + " must be a function of x1");
        phi[k].require_spans(dom.h2, pn);
        psi[k].require_spans(dom.h1, sn);
    }
}

NonClassicalData NonClassicalData::zero() {
    NonClassicalData nc;
    for (int k = 0; k < 4; ++k) {
        nc.edge_x1[k] = BoundaryFunction::zero(Axis::X1);
        nc.edge_x2[k] = BoundaryFunction::zero(Axis::X2);
    }
    return nc;
}

void NonClassicalData::validate(const Domain& dom) const {
    for (const auto& row : corner) {
        for (double z : row) {
            if (!std::isfinite(z)) throw InvalidArgument("non-classical data: non-finite corner value");
        }
    }
    for (int k = 0; k < 4; ++k) {
        const std::string e1 = "Z_{4," + std::to_string(k) + "}";
        const std::string e2 = "Z_{" + std::to_string(k) + ",4}";
        if (edge_x1[k].axis() != Axis::X1) throw InvalidArgument(e1 + " must be a function of x1");
        if (edge_x2[k].axis() != Axis::X2) throw InvalidArgument(e2 + " must be a function of x2");
        edge_x1[k].require_spans(dom.h1, e1);
        edge_x2[k].require_spans(dom.h2, e2);
    }
}

// ---------------------------------------------------------------------------

std::string AgreementRecord::label() const {
    auto prime = [](int n) {
        return n == 0 ? std::string() : "^(" + std::to_string(n) + ")";
    };
    return "phi_" + std::to_string(i1 + 1) + prime(i2) + "(0) = psi_" + std::to_string(i2 + 1) + prime(i1) + "(h1)";
}

int AgreementReport::failures() const noexcept {
    int n = 0;
    for (const auto& r : records) n += r.pass ? 0 : 1;
    return n;
}

std::string AgreementReport::render_text() const {
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%3s  %-7s %-30s %24s %24s %12s  %s\n", "#", "(i1,i2)", "condition", "lhs", "rhs",
                  "residual", "status");
    os << line;
    for (const auto& r : records) {
        const std::string ij = "(" + std::to_string(r.i1) + "," + std::to_string(r.i2) + ")";
        std::snprintf(line, sizeof line, "%3d  %-7s %-30s %24.17g %24.17g %12.4e  %s\n", r.index, ij.c_str(),
                      r.label().c_str(), r.lhs, r.rhs, r.residual, r.pass ? "PASS" : "FAIL");
        os << line;
    }
    std::snprintf(line, sizeof line, "tolerance %.3e: %d of 16 conditions fail -> %s\n", tol, failures(),
                  pass ? "AGREE" : "DISAGREE");
    os << line;
    return os.str();
}

nlohmann::json AgreementReport::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : records) {
        rows.push_back({{"index", r.index},
                        {"i1", r.i1},
                        {"i2", r.i2},
                        {"condition", r.label()},
                        {"lhs", r.lhs},
                        {"rhs", r.rhs},
                        {"residual", r.residual},
                        {"pass", r.pass}});
    }
    return {{"tolerance", tol}, {"pass", pass}, {"conditions", rows}};
}

InconsistentData::InconsistentData(AgreementReport report)
    : std::runtime_error("classical data violate " + std::to_string(report.failures()) +
                         " of the 16 agreement conditions"),
      report_(std::move(report)) {}

AgreementReport check_agreement(const ClassicalData& cd, double h1, double tol) {
    if (!(tol >= 0.0)) throw InvalidArgument("check_agreement: tolerance must be non-negative");
    for (int k = 0; k < 4; ++k) {
        if (cd.phi[k].axis() != Axis::X2) {
            throw InvalidArgument("check_agreement: phi" + std::to_string(k + 1) + " is not a function of x2");
        }
        if (cd.psi[k].axis() != Axis::X1) {
            throw InvalidArgument("check_agreement: psi" + std::to_string(k + 1) + " is not a function of x1");
        }
    }
    AgreementReport rep;
    rep.tol = tol;
    for (int i1 = 0; i1 < 4; ++i1) {
        for (int i2 = 0; i2 < 4; ++i2) {
            auto& r = rep.records[i1 * 4 + i2];
            r.index = i1 * 4 + i2 + 1;
            r.i1 = i1;
            r.i2 = i2;
            r.lhs = cd.phi[i1].derivative_at(i2, 0.0);
            r.rhs = cd.psi[i2].derivative_at(i1, h1);
            r.residual = std::abs(r.lhs - r.rhs);
            r.pass = r.residual <= tol;
            rep.pass = rep.pass && r.pass;
        }
    }
    return rep;
}

NonClassicalData classical_to_nonclassical(const ClassicalData& cd, double h1, double tol) {
    auto rep = check_agreement(cd, h1, tol);
    if (!rep.pass) throw InconsistentData(std::move(rep));
    NonClassicalData nc;
    for (const auto& r : rep.records) nc.corner[r.i1][r.i2] = r.lhs;
    for (int k = 0; k < 4; ++k) {
        nc.edge_x1[k] = cd.psi[k].fourth_derivative();
        nc.edge_x2[k] = cd.phi[k].fourth_derivative();
    }
    return nc;
}

ClassicalData nonclassical_to_classical(const NonClassicalData& nc, const Domain& dom, const TensorGrid& out_grid) {
    nc.validate(dom);
    out_grid.require_spans(dom);
    const Grid1D& g1 = out_grid.g1();
    const Grid1D& g2 = out_grid.g2();
    ClassicalData cd;
    for (int k = 0; k < 4; ++k) {
        cd.phi[k] = BoundaryFunction::taylor(Axis::X2, g2.lower(), nc.corner[k], g2, nc.edge_x2[k].sample(g2));
        std::array<double, 4> column{nc.corner[0][k], nc.corner[1][k], nc.corner[2][k], nc.corner[3][k]};
        cd.psi[k] = BoundaryFunction::taylor(Axis::X1, g1.upper(), column, g1, nc.edge_x1[k].sample(g1));
    }
    return cd;
}

ClassicalData sample_classical_from_field(const Expr& u, const Domain& dom) {
    if (expr::contains_step(u)) {
        throw UnsupportedDerivative("field '" + expr::print(u) + "' contains step() and cannot be differentiated");
    }
    if (expr::uses(u, Var::T)) throw InvalidArgument("field must be written in x1 and x2");
    const Expr t = expr::variable(Var::T);
    ClassicalData cd;
    Expr d1 = u;
    Expr d2 = u;
    for (int k = 0; k < 4; ++k) {
        cd.phi[k] = BoundaryFunction::analytic(
            Axis::X2, expr::substitute(expr::substitute(d1, Var::X1, expr::literal(dom.h1)), Var::X2, t));
        cd.psi[k] = BoundaryFunction::analytic(
            Axis::X1, expr::substitute(expr::substitute(d2, Var::X2, expr::literal(0.0)), Var::X1, t));
        d1 = expr::derive(d1, Var::X1);
        d2 = expr::derive(d2, Var::X2);
    }
    return cd;
}

}  // namespace cbvp
