#include "cbvp/operator.hpp"

#include <cmath>

namespace cbvp {

Coefficient::Coefficient(expr::Expr e) : repr_(std::move(e)) {}

Coefficient::Coefficient(GridFunction2D samples) : repr_(std::move(samples)) {
    std::get<GridFunction2D>(repr_).require_finite("sampled coefficient");
}

GridFunction2D Coefficient::on(const TensorGrid& grid) const {
    if (!is_analytic()) {
        if (!(samples().grid() == grid)) throw InvalidArgument("sampled coefficient does not live on the evaluation grid");
        return samples();
    }
    GridFunction2D out(grid);
    const auto& e = expression();
    for (std::size_t i = 0; i < grid.n1(); ++i) {
        for (std::size_t j = 0; j < grid.n2(); ++j) out(i, j) = expr::eval(e, grid.g1()[i], grid.g2()[j]);
    }
    return out;
}

double eval_coefficient(const Coefficient& c, double x1, double x2) {
    if (c.is_analytic()) return expr::eval(c.expression(), x1, x2);
    const auto& s = c.samples();
    const auto i = s.grid().g1().find(x1);
    const auto j = s.grid().g2().find(x2);
    if (!i || !j) {
        throw InvalidArgument("sampled coefficient queried off its grid at (" + format_real(x1) + ", " +
                              format_real(x2) + ")");
    }
    return s(*i, *j);
}

void CoefficientSet::set(int i1, int i2, Coefficient c) {
    if (i1 < 0 || i1 > 4 || i2 < 0 || i2 > 4) {
        throw InvalidArgument("coefficient index (" + std::to_string(i1) + "," + std::to_string(i2) + ") out of range");
    }
    if (i1 == 4 && i2 == 4) throw InvalidArgument("the leading coefficient a_{4,4} is fixed to 1");
    entries_.insert_or_assign({i1, i2}, std::move(c));
}

const Coefficient& CoefficientSet::get(int i1, int i2) const {
    auto it = entries_.find({i1, i2});
    if (it == entries_.end()) {
        throw InvalidArgument("no coefficient a_{" + std::to_string(i1) + "," + std::to_string(i2) + "}");
    }
    return it->second;
}

std::map<Multi, GridFunction2D> CoefficientSet::on(const TensorGrid& grid) const {
    std::map<Multi, GridFunction2D> out;
    for (const auto& [k, c] : entries_) out.emplace(k, c.on(grid));
    return out;
}

Jet::Jet(TensorGrid grid) : grid_(std::move(grid)), d_(25, GridFunction2D(grid_)) {}

std::size_t Jet::index(int i1, int i2) {
    if (i1 < 0 || i1 > 4 || i2 < 0 || i2 > 4) throw InvalidArgument("jet index out of range");
    return static_cast<std::size_t>(i1 * 5 + i2);
}

Jet Jet::combine(double a, const Jet& other, double b) const {
    if (!(grid_ == other.grid_)) throw InvalidArgument("Jet::combine: grid mismatch");
    Jet out(grid_);
    for (std::size_t k = 0; k < d_.size(); ++k) {
        auto dst = out.d_[k].values();
        auto x = d_[k].values();
        auto y = other.d_[k].values();
        for (std::size_t n = 0; n < dst.size(); ++n) dst[n] = a * x[n] + b * y[n];
    }
    return out;
}

double apply_operator(const Jet& jet, const CoefficientSet& coeffs, std::size_t i, std::size_t j) {
    const auto& g = jet.grid();
    if (i >= g.n1() || j >= g.n2()) {
        throw InvalidArgument("apply_operator: node (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range");
    }
    const double x1 = g.g1()[i];
    const double x2 = g.g2()[j];
    double v = jet.d(4, 4)(i, j);
    for (const auto& [k, c] : coeffs.entries()) v += eval_coefficient(c, x1, x2) * jet.d(k.first, k.second)(i, j);
    return v;
}

double lp_norm(const GridFunction2D& f, double p) {
    if (std::isinf(p)) return f.sup_norm();
    if (!(p >= 1.0)) throw InvalidArgument("lp_norm: p must be >= 1");
    const auto& g = f.grid();
    const auto w1 = quad_weights(g.g1(), g.n1() - 1);
    const auto w2 = quad_weights(g.g2(), g.n2() - 1);
    double s = 0.0;
    for (std::size_t i = 0; i < f.n1(); ++i) {
        for (std::size_t j = 0; j < f.n2(); ++j) s += w1[i] * w2[j] * std::pow(std::abs(f(i, j)), p);
    }
    return std::pow(s, 1.0 / p);
}

ResidualReport residual(const Jet& jet, const Problem& prob, double p) {
    const auto& g = jet.grid();
    if (!g.spans(prob.dom)) throw InvalidArgument("residual: jet grid does not span the problem domain");
    const auto a = prob.coeffs.on(g);
    const auto rhs = prob.rhs.on(g);

    ResidualReport rep{GridFunction2D(g), 0.0, 0.0, p};
    for (std::size_t i = 0; i < g.n1(); ++i) {
        for (std::size_t j = 0; j < g.n2(); ++j) {
            double v = jet.d(4, 4)(i, j);
            for (const auto& [k, c] : a) v += c(i, j) * jet.d(k.first, k.second)(i, j);
            rep.r(i, j) = v - rhs(i, j);
        }
    }
    rep.sup = rep.r.sup_norm();
    rep.lp = lp_norm(rep.r, p);
    return rep;
}

}  // namespace cbvp
