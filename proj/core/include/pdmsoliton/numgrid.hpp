#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace pdmsoliton {

enum class GridKind { dirichlet_line, periodic };

std::string to_string(GridKind kind);

/**
 * Uniform 1-D sampling domain.
 *
 * A dirichlet_line grid samples [xmin, xmax] including both endpoints,
 * h = (xmax - xmin)/(n - 1). A periodic grid samples the ring [xmin, xmax)
 * with h = (xmax - xmin)/n; the right endpoint is the image of xmin and is
 * not stored.
 */
class Grid {
public:
    static constexpr std::size_t min_points = 8;

    // Throws DomainError for non-finite bounds, xmax <= xmin or n < 8.
    static Grid uniform(double xmin, double xmax, std::size_t n, GridKind kind);

    double xmin() const noexcept { return xmin_; }
    double xmax() const noexcept { return xmax_; }
    std::size_t size() const noexcept { return n_; }
    GridKind kind() const noexcept { return kind_; }
    bool periodic() const noexcept { return kind_ == GridKind::periodic; }
    double spacing() const noexcept { return h_; }
    double length() const noexcept { return xmax_ - xmin_; }

    double x(std::size_t i) const noexcept { return xmin_ + static_cast<double>(i) * h_; }
    std::vector<double> abscissae() const;

    // Index of the sample closest to x (clamped to the grid).
    std::size_t nearest_index(double x) const noexcept;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    Grid(double xmin, double xmax, std::size_t n, GridKind kind, double h)
        : xmin_(xmin), xmax_(xmax), n_(n), kind_(kind), h_(h) {}

    double xmin_;
    double xmax_;
    std::size_t n_;
    GridKind kind_;
    double h_;
};

inline Grid make_uniform_grid(double xmin, double xmax, std::size_t n, GridKind kind)
{
    return Grid::uniform(xmin, xmax, n, kind);
}

/**
 * Real samples of a function on a Grid, one per grid point.
 *
 * Construction rejects size mismatches and non-finite values, so every
 * SampledField in circulation is finite.
 */
class SampledField {
public:
    SampledField(Grid grid, std::vector<double> values);

    static SampledField zeros(const Grid& grid);
    static SampledField constant(const Grid& grid, double value);
    static SampledField sample(const Grid& grid, const std::function<double(double)>& f);

    const Grid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    double x(std::size_t i) const noexcept { return grid_.x(i); }

    double max_abs() const noexcept;

    SampledField map(const std::function<double(double)>& f) const;
    SampledField map_with_x(const std::function<double(double, double)>& f) const;

    SampledField& operator+=(const SampledField& other);
    SampledField& operator-=(const SampledField& other);
    SampledField& operator*=(double s);
    SampledField& operator+=(double s);

    friend SampledField operator+(SampledField a, const SampledField& b) { return a += b; }
    friend SampledField operator-(SampledField a, const SampledField& b) { return a -= b; }
    friend SampledField operator*(SampledField a, double s) { return a *= s; }
    friend SampledField operator*(double s, SampledField a) { return a *= s; }
    friend SampledField operator+(SampledField a, double s) { return a += s; }

    // Pointwise product.
    friend SampledField operator*(const SampledField& a, const SampledField& b);

private:
    void require_same_grid(const SampledField& other) const;

    Grid grid_;
    std::vector<double> values_;
};

// Max |a - b| over samples [skip, n - skip). Grids must agree.
double max_abs_difference(const SampledField& a, const SampledField& b, std::size_t skip = 0);

// Max |f| over samples [skip, n - skip).
double max_abs_interior(const SampledField& f, std::size_t skip);

/**
 * Finite-difference derivative of order 1, 2 or 3.
 *
 * Interior points use 4th-order central stencils (5 points for orders 1-2,
 * 7 points for order 3). Periodic grids wrap; dirichlet_line grids switch
 * to one-sided stencils of one order less near the edges.
 */
SampledField derivative(const SampledField& f, int order);

// Fourier-collocation derivative; periodic grids only.
SampledField spectral_derivative(const SampledField& f, int order);

// Trapezoid rule on dirichlet_line grids, rectangle rule on periodic ones.
double integrate(const SampledField& f);

// Finite-difference weights for derivative `order` at x0 on the given
// nodes (Fornberg's recursion). Exposed for tests and for the solvers.
std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order);

} // namespace pdmsoliton
