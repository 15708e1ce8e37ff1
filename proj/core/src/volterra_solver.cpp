#include "cbvp/volterra_solver.hpp"

#include <chrono>
#include <cmath>

namespace cbvp {

const char* method_name(Method m) noexcept { return m == Method::Marching ? "marching" : "picard"; }

Method parse_method(const std::string& name) {
    if (name == "marching") return Method::Marching;
    if (name == "picard") return Method::Picard;
    throw InvalidArgument("unknown solver method '" + name + "' (expected marching or picard)");
}

void SolverOptions::validate() const {
    if (!(tol > 0.0)) throw InvalidArgument("solver tol must be positive");
    if (max_iter < 1) throw InvalidArgument("solver max_iter must be at least 1");
    if (!(pivot_floor > 0.0)) throw InvalidArgument("solver pivot_floor must be positive");
}

KernelTable::KernelTable(const Grid1D& grid, Origin origin)
    : n_(grid.size()), origin_(origin), w_(4 * n_ * n_, 0.0) {
    for (std::size_t t = 0; t < n_; ++t) {
        const std::size_t lo = first(t);
        const std::size_t hi = last(t);
        const auto w = interval_weights(grid, lo, hi);
        const double sign = origin_ == Origin::FromLower ? 1.0 : -1.0;
        for (int m = 0; m < 4; ++m) {
            for (std::size_t s = lo; s <= hi; ++s) {
                w_[(static_cast<std::size_t>(m) * n_ + t) * n_ + s] = sign * w[s - lo] * scaled_power(grid[t] - grid[s], m);
            }
        }
    }
}

std::vector<double> KernelTable::apply(std::span<const double> f, int j) const {
    if (j == 4) return {f.begin(), f.end()};
    const int m = 3 - j;
    std::vector<double> out(n_, 0.0);
    for (std::size_t t = 0; t < n_; ++t) {
        double s = 0.0;
        for (std::size_t k = first(t); k <= last(t); ++k) s += (*this)(m, t, k) * f[k];
        out[t] = s;
    }
    return out;
}

namespace {

void require_domain_grid(const TensorGrid& grid, const Domain& dom) { grid.require_spans(dom); }

std::vector<double> column(const GridFunction2D& f, std::size_t j) {
    std::vector<double> c(f.n1());
    for (std::size_t i = 0; i < f.n1(); ++i) c[i] = f(i, j);
    return c;
}

}  // namespace

Jet data_jet(const NonClassicalData& nc, const Domain& dom, const TensorGrid& grid) {
    require_domain_grid(grid, dom);
    nc.validate(dom);
    const Grid1D& g1 = grid.g1();
    const Grid1D& g2 = grid.g2();
    const std::size_t n1 = g1.size();
    const std::size_t n2 = g2.size();
    const std::size_t top = n1 - 1;

    // t1[j1][i2][i]: remainder of Z_{4,i2} along x1; t2[i1][j2][j]: remainder of Z_{i1,4} along x2.
    std::array<std::array<std::vector<double>, 4>, 5> t1;
    std::array<std::array<std::vector<double>, 5>, 4> t2;
    for (int k = 0; k < 4; ++k) {
        const auto e1 = nc.edge_x1[k].sample(g1);
        const auto e2 = nc.edge_x2[k].sample(g2);
        for (int jj = 0; jj <= 4; ++jj) {
            auto& a = t1[jj][k];
            a.resize(n1);
            for (std::size_t i = 0; i < n1; ++i) a[i] = jj == 4 ? e1[i] : kernel_integral_1d(e1, g1, 3 - jj, i, top);
            auto& b = t2[k][jj];
            b.resize(n2);
            for (std::size_t j = 0; j < n2; ++j) b[j] = jj == 4 ? e2[j] : kernel_integral_1d(e2, g2, 3 - jj, j, 0);
        }
    }

    Jet jet(grid);
    for (int j1 = 0; j1 <= 4; ++j1) {
        for (int j2 = 0; j2 <= 4; ++j2) {
            auto& d = jet.d(j1, j2);
            for (std::size_t i = 0; i < n1; ++i) {
                const double dx1 = g1[i] - g1[top];
                for (std::size_t j = 0; j < n2; ++j) {
                    const double x2 = g2[j];
                    double v = 0.0;
                    for (int i1 = j1; i1 < 4; ++i1) {
                        const double p1 = scaled_power(dx1, i1 - j1);
                        for (int i2 = j2; i2 < 4; ++i2) v += p1 * scaled_power(x2, i2 - j2) * nc.corner[i1][i2];
                    }
                    for (int i2 = j2; i2 < 4; ++i2) v += scaled_power(x2, i2 - j2) * t1[j1][i2][i];
                    for (int i1 = j1; i1 < 4; ++i1) v += scaled_power(dx1, i1 - j1) * t2[i1][j2][j];
                    d(i, j) = v;
                }
            }
        }
    }
    return jet;
}

Jet kernel_apply_all(const GridFunction2D& v, const Domain& dom) {
    const auto& grid = v.grid();
    require_domain_grid(grid, dom);
    const KernelTable w1(grid.g1(), KernelTable::Origin::FromUpper);
    const KernelTable w2(grid.g2(), KernelTable::Origin::FromLower);
    const std::size_t n1 = grid.n1();
    const std::size_t n2 = grid.n2();

    // Inner integrals along x2, row by row.
    std::array<GridFunction2D, 4> inner{GridFunction2D(grid), GridFunction2D(grid), GridFunction2D(grid),
                                        GridFunction2D(grid)};
    for (std::size_t i = 0; i < n1; ++i) {
        const std::span<const double> row = v.values().subspan(i * n2, n2);
        for (int j2 = 0; j2 < 4; ++j2) {
            const auto r = w2.apply(row, j2);
            for (std::size_t j = 0; j < n2; ++j) inner[j2](i, j) = r[j];
        }
    }

    Jet out(grid);
    for (int j2 = 0; j2 <= 4; ++j2) {
        const GridFunction2D& src = j2 == 4 ? v : inner[j2];
        for (std::size_t j = 0; j < n2; ++j) {
            const auto col = column(src, j);
            for (int j1 = 0; j1 <= 4; ++j1) {
                const auto r = w1.apply(col, j1);
                auto& dst = out.d(j1, j2);
                for (std::size_t i = 0; i < n1; ++i) dst(i, j) = r[i];
            }
        }
    }
    return out;
}

GridFunction2D kernel_apply(const GridFunction2D& v, int j1, int j2, const Domain& dom) {
    if (j1 < 0 || j1 > 4 || j2 < 0 || j2 > 4) throw InvalidArgument("kernel_apply: index out of range");
    const auto& grid = v.grid();
    require_domain_grid(grid, dom);
    const KernelTable w1(grid.g1(), KernelTable::Origin::FromUpper);
    const KernelTable w2(grid.g2(), KernelTable::Origin::FromLower);
    GridFunction2D inner(grid);
    for (std::size_t i = 0; i < grid.n1(); ++i) {
        const auto r = w2.apply(v.values().subspan(i * grid.n2(), grid.n2()), j2);
        for (std::size_t j = 0; j < grid.n2(); ++j) inner(i, j) = r[j];
    }
    GridFunction2D out(grid);
    for (std::size_t j = 0; j < grid.n2(); ++j) {
        const auto r = w1.apply(column(inner, j), j1);
        for (std::size_t i = 0; i < grid.n1(); ++i) out(i, j) = r[i];
    }
    return out;
}

Jet assemble_jet(const NonClassicalData& nc, const GridFunction2D& v, const Domain& dom, const TensorGrid& grid) {
    if (!(v.grid() == grid)) throw InvalidArgument("assemble_jet: v does not live on the jet grid");
    const Jet p = data_jet(nc, dom, grid);
    const Jet k = kernel_apply_all(v, dom);
    Jet jet = p.combine(1.0, k, 1.0);
    jet.d(4, 4) = v;
    return jet;
}

namespace {

using CoefGrids = std::map<Multi, GridFunction2D>;

// g = Z44 - sum a P: the part of the fixed-point map that does not involve v.
GridFunction2D data_forcing(const GridFunction2D& rhs, const CoefGrids& a, const Jet& p) {
    GridFunction2D g = rhs;
    for (const auto& [k, c] : a) {
        const auto& pk = p.d(k.first, k.second);
        for (std::size_t n = 0; n < g.values().size(); ++n) g.values()[n] -= c.values()[n] * pk.values()[n];
    }
    return g;
}

// g - sum a K v
GridFunction2D fixed_point_map(const GridFunction2D& g, const CoefGrids& a, const Jet& kv) {
    GridFunction2D out = g;
    for (const auto& [k, c] : a) {
        const auto& kk = kv.d(k.first, k.second);
        for (std::size_t n = 0; n < out.values().size(); ++n) out.values()[n] -= c.values()[n] * kk.values()[n];
    }
    return out;
}

GridFunction2D solve_picard(const GridFunction2D& g, const CoefGrids& a, const Domain& dom, const SolverOptions& opts,
                            SolveStats& stats) {
    GridFunction2D v(g.grid());
    double update = 0.0;
    for (int it = 1; it <= opts.max_iter; ++it) {
        GridFunction2D next = fixed_point_map(g, a, kernel_apply_all(v, dom));
        update = sup_distance(next, v);
        v = std::move(next);
        if (!std::isfinite(update)) {
            throw ConvergenceFailure("picard iteration diverged at sweep " + std::to_string(it), it, update);
        }
        if (update <= opts.tol) {
            stats.iterations = it;
            stats.update_norm = update;
            return v;
        }
    }
    throw ConvergenceFailure("picard iteration did not reach tol " + format_real(opts.tol) + " in " +
                                 std::to_string(opts.max_iter) + " sweeps (last update " + format_real(update) + ")",
                             opts.max_iter, update);
}

// Nodes are visited with x1 descending from h1 and x2 ascending from 0, so every
// quadrature source of K v at the current node is known except the node itself.
// Only kernel factors of degree 0 (index 3) or pointwise factors (index 4) see the
// current node, which leaves one scalar equation v (1 + s) = known per node.
GridFunction2D solve_marching(const GridFunction2D& g, const CoefGrids& a, const SolverOptions& opts) {
    const auto& grid = g.grid();
    const std::size_t n1 = grid.n1();
    const std::size_t n2 = grid.n2();
    const KernelTable w1(grid.g1(), KernelTable::Origin::FromUpper);
    const KernelTable w2(grid.g2(), KernelTable::Origin::FromLower);

    GridFunction2D v(grid);
    // inner[j2](i, j) = (L2^j2 v(i, .))(x2_j) for finished nodes.
    std::array<GridFunction2D, 4> inner{GridFunction2D(grid), GridFunction2D(grid), GridFunction2D(grid),
                                        GridFunction2D(grid)};
    auto inner_at = [&](int j2, std::size_t i, std::size_t j) { return j2 == 4 ? v(i, j) : inner[j2](i, j); };

    for (std::size_t ii = n1; ii-- > 0;) {
        for (std::size_t j = 0; j < n2; ++j) {
            std::array<double, 5> known_inner{};
            std::array<double, 5> self2{};
            for (int j2 = 0; j2 < 4; ++j2) {
                const int m = 3 - j2;
                double s = 0.0;
                for (std::size_t b = 0; b < j; ++b) s += w2(m, j, b) * v(ii, b);
                known_inner[j2] = s;
                self2[j2] = w2(m, j, j);
            }
            known_inner[4] = 0.0;
            self2[4] = 1.0;

            double known = g(ii, j);
            double s = 0.0;
            for (const auto& [k, c] : a) {
                const auto [j1, j2] = k;
                const double coef = c(ii, j);
                double kknown;
                double self;
                if (j1 == 4) {
                    kknown = known_inner[j2];
                    self = self2[j2];
                } else {
                    const int m = 3 - j1;
                    kknown = w1(m, ii, ii) * known_inner[j2];
                    for (std::size_t r = ii + 1; r < n1; ++r) kknown += w1(m, ii, r) * inner_at(j2, r, j);
                    self = w1(m, ii, ii) * self2[j2];
                }
                known -= coef * kknown;
                s += coef * self;
            }
            const double pivot = 1.0 + s;
            if (!(std::abs(pivot) >= opts.pivot_floor)) {
                throw SingularMarch(ii, j, grid.g1()[ii], grid.g2()[j], std::abs(pivot));
            }
            const double vn = known / pivot;
            v(ii, j) = vn;
            for (int j2 = 0; j2 < 4; ++j2) inner[j2](ii, j) = known_inner[j2] + self2[j2] * vn;
        }
    }
    return v;
}

}  // namespace

SolveResult solve(const Problem& prob, const TensorGrid& grid, const SolverOptions& opts) {
    opts.validate();
    grid.require_spans(prob.dom);
    const auto t0 = std::chrono::steady_clock::now();

    const Jet p = data_jet(prob.data, prob.dom, grid);
    const CoefGrids a = prob.coeffs.on(grid);
    for (const auto& [k, c] : a) {
        c.require_finite("coefficient a_{" + std::to_string(k.first) + "," + std::to_string(k.second) + "}");
    }
    GridFunction2D rhs = prob.rhs.on(grid);
    rhs.require_finite("right-hand side");
    const GridFunction2D g = data_forcing(rhs, a, p);

    SolveStats stats;
    GridFunction2D v(grid);
    if (opts.method == Method::Picard) {
        v = solve_picard(g, a, prob.dom, opts, stats);
    } else {
        v = solve_marching(g, a, opts);
        stats.iterations = 1;
        stats.update_norm = 0.0;
    }

    const Jet kv = kernel_apply_all(v, prob.dom);
    stats.residual_norm = sup_distance(v, fixed_point_map(g, a, kv));
    Jet jet = p.combine(1.0, kv, 1.0);
    jet.d(4, 4) = v;

    stats.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return SolveResult{std::move(jet), stats};
}

}  // namespace cbvp
