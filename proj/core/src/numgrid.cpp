#include "pdmsoliton/numgrid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pdmsoliton/error.hpp"

namespace pdmsoliton {

std::string to_string(GridKind kind)
{
    return kind == GridKind::periodic ? "periodic" : "dirichlet_line";
}

Grid Grid::uniform(double xmin, double xmax, std::size_t n, GridKind kind)
{
    if (!std::isfinite(xmin) || !std::isfinite(xmax)) {
        throw DomainError("grid bounds must be finite");
    }
    if (!(xmax > xmin)) {
        std::ostringstream msg;
        msg << "grid requires xmax > xmin (got [" << xmin << ", " << xmax << "])";
        throw DomainError(msg.str());
    }
    if (n < min_points) {
        std::ostringstream msg;
        msg << "grid requires at least " << min_points << " points (got " << n << ")";
        throw DomainError(msg.str());
    }
    const double cells = kind == GridKind::periodic ? static_cast<double>(n)
                                                    : static_cast<double>(n - 1);
    return Grid(xmin, xmax, n, kind, (xmax - xmin) / cells);
}

std::vector<double> Grid::abscissae() const
{
    std::vector<double> xs(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        xs[i] = x(i);
    }
    return xs;
}

std::size_t Grid::nearest_index(double x) const noexcept
{
    const double pos = std::round((x - xmin_) / h_);
    if (!(pos > 0.0)) {
        return 0;
    }
    return std::min(static_cast<std::size_t>(pos), n_ - 1);
}

SampledField::SampledField(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values))
{
    if (values_.size() != grid_.size()) {
        std::ostringstream msg;
        msg << "field has " << values_.size() << " samples but grid has " << grid_.size();
        throw DomainError(msg.str());
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            std::ostringstream msg;
            msg << "non-finite field value at x = " << grid_.x(i);
            throw DomainError(msg.str());
        }
    }
}

SampledField SampledField::zeros(const Grid& grid)
{
    return SampledField(grid, std::vector<double>(grid.size(), 0.0));
}

SampledField SampledField::constant(const Grid& grid, double value)
{
    return SampledField(grid, std::vector<double>(grid.size(), value));
}

SampledField SampledField::sample(const Grid& grid, const std::function<double(double)>& f)
{
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = f(grid.x(i));
    }
    return SampledField(grid, std::move(v));
}

double SampledField::max_abs() const noexcept
{
    double m = 0.0;
    for (double v : values_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

SampledField SampledField::map(const std::function<double(double)>& f) const
{
    std::vector<double> v(values_.size());
    std::transform(values_.begin(), values_.end(), v.begin(), f);
    return SampledField(grid_, std::move(v));
}

SampledField SampledField::map_with_x(const std::function<double(double, double)>& f) const
{
    std::vector<double> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = f(grid_.x(i), values_[i]);
    }
    return SampledField(grid_, std::move(v));
}

void SampledField::require_same_grid(const SampledField& other) const
{
    if (!(grid_ == other.grid_)) {
        throw DomainError("fields live on different grids");
    }
}

SampledField& SampledField::operator+=(const SampledField& other)
{
    require_same_grid(other);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        values_[i] += other.values_[i];
    }
    return *this;
}

SampledField& SampledField::operator-=(const SampledField& other)
{
    require_same_grid(other);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        values_[i] -= other.values_[i];
    }
    return *this;
}

SampledField& SampledField::operator*=(double s)
{
    for (double& v : values_) {
        v *= s;
    }
    return *this;
}

SampledField& SampledField::operator+=(double s)
{
    for (double& v : values_) {
        v += s;
    }
    return *this;
}

SampledField operator*(const SampledField& a, const SampledField& b)
{
    a.require_same_grid(b);
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = a.values_[i] * b.values_[i];
    }
    return SampledField(a.grid_, std::move(v));
}

double max_abs_difference(const SampledField& a, const SampledField& b, std::size_t skip)
{
    if (!(a.grid() == b.grid())) {
        throw DomainError("fields live on different grids");
    }
    double m = 0.0;
    for (std::size_t i = skip; i + skip < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

double max_abs_interior(const SampledField& f, std::size_t skip)
{
    double m = 0.0;
    for (std::size_t i = skip; i + skip < f.size(); ++i) {
        m = std::max(m, std::abs(f[i]));
    }
    return m;
}

std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order)
{
    // Fornberg (1988): weights c[j][m] for derivative m at x0 using nodes[0..j].
    const std::size_t n = nodes.size();
    const auto m_max = static_cast<std::size_t>(order);
    if (order < 0 || n <= m_max) {
        throw DomainError("fd_weights: need more nodes than the derivative order");
    }
    std::vector<std::vector<double>> c(n, std::vector<double>(m_max + 1, 0.0));
    c[0][0] = 1.0;
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t mn = std::min(i, m_max);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (std::size_t k = mn; k >= 1; --k) {
                    c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (std::size_t k = mn; k >= 1; --k) {
                c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j) {
        w[j] = c[j][m_max];
    }
    return w;
}

namespace {

// Stencil described by offsets relative to the evaluation point and weights
// already divided by h^order.
struct Stencil {
    std::vector<int> offsets;
    std::vector<double> weights;
};

Stencil make_stencil(int first_offset, int width, int order, double h)
{
    Stencil s;
    std::vector<double> nodes(static_cast<std::size_t>(width));
    for (int j = 0; j < width; ++j) {
        s.offsets.push_back(first_offset + j);
        nodes[static_cast<std::size_t>(j)] = static_cast<double>(first_offset + j);
    }
    s.weights = fd_weights(0.0, nodes, order);
    const double scale = std::pow(h, -order);
    for (double& w : s.weights) {
        w *= scale;
    }
    return s;
}

} // namespace

SampledField derivative(const SampledField& f, int order)
{
    if (order < 1 || order > 3) {
        throw DomainError("derivative order must be 1, 2 or 3");
    }
    const Grid& g = f.grid();
    const auto n = static_cast<long>(g.size());
    const double h = g.spacing();
    const int half = order == 3 ? 3 : 2;
    const Stencil central = make_stencil(-half, 2 * half + 1, order, h);
    std::vector<double> out(g.size());
    auto vals = f.values();

    auto apply = [&](const Stencil& s, long i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < s.offsets.size(); ++j) {
            long idx = i + s.offsets[j];
            if (g.periodic()) {
                idx = ((idx % n) + n) % n;
            }
            acc += s.weights[j] * vals[static_cast<std::size_t>(idx)];
        }
        return acc;
    };

    if (g.periodic()) {
        for (long i = 0; i < n; ++i) {
            out[static_cast<std::size_t>(i)] = apply(central, i);
        }
        return SampledField(g, std::move(out));
    }

    // One-sided stencils of width order + 3 (third-order accurate) near edges.
    const int edge_width = order + 3;
    for (long i = 0; i < n; ++i) {
        if (i >= half && i < n - half) {
            out[static_cast<std::size_t>(i)] = apply(central, i);
        } else if (i < half) {
            out[static_cast<std::size_t>(i)] =
                apply(make_stencil(-static_cast<int>(i), edge_width, order, h), i);
        } else {
            const int first = static_cast<int>(n - 1 - i) - edge_width + 1;
            out[static_cast<std::size_t>(i)] = apply(make_stencil(first, edge_width, order, h), i);
        }
    }
    return SampledField(g, std::move(out));
}

double integrate(const SampledField& f)
{
    const auto v = f.values();
    double sum = 0.0;
    for (double x : v) {
        sum += x;
    }
    if (!f.grid().periodic()) {
        sum -= 0.5 * (v.front() + v.back());
    }
    return sum * f.grid().spacing();
}

} // namespace pdmsoliton
