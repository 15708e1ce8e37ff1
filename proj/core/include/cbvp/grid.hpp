#pragma once

// Tensor-product grids over G = (0,h1) x (0,h2), grid functions and the
// trapezoid product quadrature shared by the boundary-data conversions and
// the Volterra solver.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cbvp {

struct Domain {
    double h1 = 1.0;
    double h2 = 1.0;

    /// Throws InvalidArgument unless both extents are positive and finite.
    static Domain make(double h1, double h2);
};

/// Strictly increasing node sequence, at least five nodes.
class Grid1D {
public:
    static constexpr std::size_t kMinNodes = 5;

    explicit Grid1D(std::vector<double> nodes);

    std::size_t size() const noexcept { return nodes_.size(); }
    std::span<const double> nodes() const noexcept { return nodes_; }
    double operator[](std::size_t k) const { return nodes_[k]; }
    double lower() const noexcept { return nodes_.front(); }
    double upper() const noexcept { return nodes_.back(); }

    /// Largest spacing between neighbouring nodes.
    double max_spacing() const noexcept;

    /// Index of the node equal to x (relative tolerance 1e-12 of the span).
    std::optional<std::size_t> find(double x) const noexcept;
    /// Like find() but throws InvalidArgument for off-node queries.
    std::size_t index_of(double x) const;

    bool same_nodes(const Grid1D& other) const noexcept;

private:
    std::vector<double> nodes_;
};

Grid1D make_uniform_grid(std::size_t n, double a, double b);

class TensorGrid {
public:
    TensorGrid(Grid1D g1, Grid1D g2);
    static TensorGrid uniform(const Domain& dom, std::size_t n1, std::size_t n2);

    const Grid1D& g1() const noexcept { return g1_; }
    const Grid1D& g2() const noexcept { return g2_; }
    std::size_t n1() const noexcept { return g1_.size(); }
    std::size_t n2() const noexcept { return g2_.size(); }

    /// True when g1 spans [0,h1] and g2 spans [0,h2].
    bool spans(const Domain& dom) const noexcept;
    void require_spans(const Domain& dom) const;

    bool operator==(const TensorGrid& other) const noexcept {
        return g1_.same_nodes(other.g1_) && g2_.same_nodes(other.g2_);
    }

private:
    Grid1D g1_;
    Grid1D g2_;
};

/// Real values at the nodes of a TensorGrid; (i, j) <-> (g1[i], g2[j]).
class GridFunction2D {
public:
    explicit GridFunction2D(TensorGrid grid, double fill = 0.0);
    GridFunction2D(TensorGrid grid, std::vector<double> values);

    const TensorGrid& grid() const noexcept { return grid_; }
    std::size_t n1() const noexcept { return grid_.n1(); }
    std::size_t n2() const noexcept { return grid_.n2(); }

    double operator()(std::size_t i, std::size_t j) const { return values_[i * grid_.n2() + j]; }
    double& operator()(std::size_t i, std::size_t j) { return values_[i * grid_.n2() + j]; }

    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }

    double sup_norm() const noexcept;

    /// Throws InvalidArgument if any entry is NaN or infinite.
    void require_finite(const std::string& what) const;

private:
    TensorGrid grid_;
    std::vector<double> values_;
};

double sup_distance(const GridFunction2D& a, const GridFunction2D& b);

/// Composite trapezoid weights for the integral over [nodes[0], nodes[upto]].
/// Length upto + 1.
std::vector<double> quad_weights(const Grid1D& grid, std::size_t upto);

/// Trapezoid weights over [nodes[lo], nodes[hi]], indexed from lo. Length hi - lo + 1.
std::vector<double> interval_weights(const Grid1D& grid, std::size_t lo, std::size_t hi);

/// Oriented product quadrature of
///     int_{origin}^{x} (x - t)^m / m! f(t) dt
/// with the composite trapezoid rule applied to the whole integrand.
/// `f` holds samples on `grid`; x and origin are node indices, origin may
/// exceed x (the result is then the negated integral over [x, origin]).
double kernel_integral_1d(std::span<const double> f, const Grid1D& grid, int m, std::size_t x,
                          std::size_t origin);

/// Same, with the limits given as coordinates; both must be grid nodes.
double kernel_integral_1d(std::span<const double> f, const Grid1D& grid, int m, double x, double origin);

/// Derivative of the given order (1..4) of sampled data, by repeated
/// second-order three-point differences (one-sided at the ends).
std::vector<double> diff_sampled(std::span<const double> values, const Grid1D& grid, int order);

/// (x)^m / m! for m >= 0.
double scaled_power(double x, int m) noexcept;

// CSV: header `x1\x2,<x2 nodes>`, then one row per x1 node: `<x1>,<values...>`.
void write_csv(std::ostream& os, const GridFunction2D& f);
GridFunction2D read_csv(std::istream& is);

/// Shortest round-trip decimal form (17 significant digits).
std::string format_real(double v);

}  // namespace cbvp
