#include "cbvp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "cbvp/errors.hpp"

namespace cbvp {

Domain Domain::make(double h1, double h2) {
    if (!(h1 > 0.0) || !(h2 > 0.0) || !std::isfinite(h1) || !std::isfinite(h2)) {
        throw InvalidArgument("Domain: extents must be positive and finite (h1 = " + format_real(h1) +
                              ", h2 = " + format_real(h2) + ")");
    }
    return Domain{h1, h2};
}

Grid1D::Grid1D(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < kMinNodes) {
        throw InvalidArgument("Grid1D: need at least " + std::to_string(kMinNodes) + " nodes, got " +
                              std::to_string(nodes_.size()));
    }
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        if (!std::isfinite(nodes_[k])) throw InvalidArgument("Grid1D: non-finite node");
        if (k > 0 && !(nodes_[k] > nodes_[k - 1])) {
            throw InvalidArgument("Grid1D: nodes must be strictly increasing (index " + std::to_string(k) + ")");
        }
    }
}

double Grid1D::max_spacing() const noexcept {
    double h = 0.0;
    for (std::size_t k = 1; k < nodes_.size(); ++k) h = std::max(h, nodes_[k] - nodes_[k - 1]);
    return h;
}

std::optional<std::size_t> Grid1D::find(double x) const noexcept {
    const double eps = 1e-12 * std::max(1.0, upper() - lower());
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x - eps);
    if (it != nodes_.end() && std::abs(*it - x) <= eps) {
        return static_cast<std::size_t>(it - nodes_.begin());
    }
    return std::nullopt;
}

std::size_t Grid1D::index_of(double x) const {
    if (auto k = find(x)) return *k;
    throw InvalidArgument("Grid1D: " + format_real(x) + " is not a grid node");
}

bool Grid1D::same_nodes(const Grid1D& other) const noexcept {
    if (other.size() != size()) return false;
    const double eps = 1e-12 * std::max(1.0, upper() - lower());
    for (std::size_t k = 0; k < size(); ++k) {
        if (std::abs(nodes_[k] - other.nodes_[k]) > eps) return false;
    }
    return true;
}

Grid1D make_uniform_grid(std::size_t n, double a, double b) {
    if (n < Grid1D::kMinNodes) {
        throw InvalidArgument("make_uniform_grid: n = " + std::to_string(n) + " is below the minimum of 5");
    }
    if (!(b > a)) {
        throw InvalidArgument("make_uniform_grid: degenerate interval [" + format_real(a) + ", " + format_real(b) + "]");
    }
    std::vector<double> nodes(n);
    const double step = (b - a) / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k) nodes[k] = a + static_cast<double>(k) * step;
    nodes.back() = b;
    return Grid1D(std::move(nodes));
}

TensorGrid::TensorGrid(Grid1D g1, Grid1D g2) : g1_(std::move(g1)), g2_(std::move(g2)) {}

TensorGrid TensorGrid::uniform(const Domain& dom, std::size_t n1, std::size_t n2) {
    return TensorGrid(make_uniform_grid(n1, 0.0, dom.h1), make_uniform_grid(n2, 0.0, dom.h2));
}

bool TensorGrid::spans(const Domain& dom) const noexcept {
    auto close = [](double a, double b, double scale) { return std::abs(a - b) <= 1e-12 * std::max(1.0, scale); };
    return close(g1_.lower(), 0.0, dom.h1) && close(g1_.upper(), dom.h1, dom.h1) && close(g2_.lower(), 0.0, dom.h2) &&
           close(g2_.upper(), dom.h2, dom.h2);
}

void TensorGrid::require_spans(const Domain& dom) const {
    if (!spans(dom)) {
        throw InvalidArgument("TensorGrid: grid does not span [0," + format_real(dom.h1) + "] x [0," +
                              format_real(dom.h2) + "]");
    }
}

GridFunction2D::GridFunction2D(TensorGrid grid, double fill)
    : grid_(std::move(grid)), values_(grid_.n1() * grid_.n2(), fill) {}

GridFunction2D::GridFunction2D(TensorGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.n1() * grid_.n2()) {
        throw InvalidArgument("GridFunction2D: " + std::to_string(values_.size()) + " values for a " +
                              std::to_string(grid_.n1()) + "x" + std::to_string(grid_.n2()) + " grid");
    }
}

double GridFunction2D::sup_norm() const noexcept {
    double s = 0.0;
    for (double v : values_) s = std::max(s, std::abs(v));
    return s;
}

void GridFunction2D::require_finite(const std::string& what) const {
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!std::isfinite(values_[k])) {
            throw InvalidArgument(what + ": non-finite value at node (" + std::to_string(k / n2()) + ", " +
                                  std::to_string(k % n2()) + ")");
        }
    }
}

double sup_distance(const GridFunction2D& a, const GridFunction2D& b) {
    if (!(a.grid() == b.grid())) throw InvalidArgument("sup_distance: grid mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < a.values().size(); ++k) s = std::max(s, std::abs(a.values()[k] - b.values()[k]));
    return s;
}

std::vector<double> interval_weights(const Grid1D& grid, std::size_t lo, std::size_t hi) {
    if (lo > hi || hi >= grid.size()) {
        throw InvalidArgument("interval_weights: bad node range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    std::vector<double> w(hi - lo + 1, 0.0);
    for (std::size_t k = lo; k < hi; ++k) {
        const double half = 0.5 * (grid[k + 1] - grid[k]);
        w[k - lo] += half;
        w[k + 1 - lo] += half;
    }
    return w;
}

std::vector<double> quad_weights(const Grid1D& grid, std::size_t upto) {
    if (upto >= grid.size()) {
        throw InvalidArgument("quad_weights: index " + std::to_string(upto) + " out of range");
    }
    return interval_weights(grid, 0, upto);
}

double scaled_power(double x, int m) noexcept {
    double r = 1.0;
    for (int k = 1; k <= m; ++k) r *= x / static_cast<double>(k);
    return r;
}

double kernel_integral_1d(std::span<const double> f, const Grid1D& grid, int m, std::size_t x, std::size_t origin) {
    if (f.size() != grid.size()) throw InvalidArgument("kernel_integral_1d: sample count does not match grid");
    if (x >= grid.size() || origin >= grid.size()) throw InvalidArgument("kernel_integral_1d: node index out of range");
    if (m < 0) throw InvalidArgument("kernel_integral_1d: negative kernel degree");
    if (x == origin) return 0.0;

    const std::size_t lo = std::min(x, origin);
    const std::size_t hi = std::max(x, origin);
    const auto w = interval_weights(grid, lo, hi);
    const double xv = grid[x];
    double sum = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) sum += w[k - lo] * scaled_power(xv - grid[k], m) * f[k];
    return origin < x ? sum : -sum;
}

double kernel_integral_1d(std::span<const double> f, const Grid1D& grid, int m, double x, double origin) {
    return kernel_integral_1d(f, grid, m, grid.index_of(x), grid.index_of(origin));
}

namespace {

std::vector<double> first_derivative(std::span<const double> f, const Grid1D& g) {
    const std::size_t n = g.size();
    std::vector<double> d(n);
    {
        const double a = g[1] - g[0];
        const double b = g[2] - g[1];
        d[0] = -(2.0 * a + b) / (a * (a + b)) * f[0] + (a + b) / (a * b) * f[1] - a / (b * (a + b)) * f[2];
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hm = g[i] - g[i - 1];
        const double hp = g[i + 1] - g[i];
        d[i] = -hp / (hm * (hm + hp)) * f[i - 1] + (hp - hm) / (hm * hp) * f[i] + hm / (hp * (hm + hp)) * f[i + 1];
    }
    {
        const double a = g[n - 1] - g[n - 2];
        const double b = g[n - 2] - g[n - 3];
        d[n - 1] = (2.0 * a + b) / (a * (a + b)) * f[n - 1] - (a + b) / (a * b) * f[n - 2] + a / (b * (a + b)) * f[n - 3];
    }
    return d;
}

}  // namespace

std::vector<double> diff_sampled(std::span<const double> values, const Grid1D& grid, int order) {
    if (order < 1 || order > 4) throw InvalidArgument("diff_sampled: order must be in 1..4");
    if (values.size() != grid.size()) throw InvalidArgument("diff_sampled: sample count does not match grid");
    if (grid.size() < static_cast<std::size_t>(order) + 1 || grid.size() < 3) {
        throw InvalidArgument("diff_sampled: too few nodes for order " + std::to_string(order));
    }
    std::vector<double> d(values.begin(), values.end());
    for (int k = 0; k < order; ++k) d = first_derivative(d, grid);
    return d;
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const GridFunction2D& f) {
    const auto& g = f.grid();
    os << "x1\\x2";
    for (double x2 : g.g2().nodes()) os << ',' << format_real(x2);
    os << '\n';
    for (std::size_t i = 0; i < f.n1(); ++i) {
        os << format_real(g.g1()[i]);
        for (std::size_t j = 0; j < f.n2(); ++j) os << ',' << format_real(f(i, j));
        os << '\n';
    }
}

namespace {

std::vector<double> split_reals(const std::string& line, std::size_t skip) {
    std::vector<double> out;
    std::stringstream ss(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(ss, cell, ',')) {
        if (col++ < skip) continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(cell, &used);
        } catch (const std::exception&) {
            throw InvalidArgument("read_csv: bad number '" + cell + "'");
        }
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
        if (used != cell.size()) throw InvalidArgument("read_csv: bad number '" + cell + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace

GridFunction2D read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw InvalidArgument("read_csv: empty input");
    if (line.rfind("x1\\x2", 0) != 0) throw InvalidArgument("read_csv: missing 'x1\\x2' header");
    auto x2 = split_reals(line, 1);
    std::vector<double> x1;
    std::vector<double> values;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") continue;
        auto row = split_reals(line, 0);
        if (row.size() != x2.size() + 1) throw InvalidArgument("read_csv: ragged row");
        x1.push_back(row[0]);
        values.insert(values.end(), row.begin() + 1, row.end());
    }
    GridFunction2D f(TensorGrid(Grid1D(std::move(x1)), Grid1D(std::move(x2))), std::move(values));
    f.require_finite("read_csv");
    return f;
}

}  // namespace cbvp
