#include "pdmsoliton/susy_factor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pdmsoliton/error.hpp"
#include "pdmsoliton/fourier.hpp"
#include "pdmsoliton/spectral_solver.hpp"

namespace pdmsoliton {

namespace {

SampledField first_derivative(const SampledField& f)
{
    return f.grid().periodic() ? spectral_derivative(f, 1) : derivative(f, 1);
}

std::size_t edge_skip(const Grid& g) { return g.periodic() ? 0 : 3; }

} // namespace

SampledField cole_hopf(const SampledField& psi)
{
    const Grid& g = psi.grid();
    const double peak = psi.max_abs();
    if (peak == 0.0) {
        throw NumericalError("cole_hopf: psi vanishes identically");
    }
    const double floor = 1e-12 * peak;
    std::size_t first = g.size();
    std::size_t last = 0;
    int sign = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (std::abs(psi[i]) <= floor) {
            continue;
        }
        const int s = psi[i] > 0.0 ? 1 : -1;
        if (sign != 0 && s != sign) {
            std::ostringstream msg;
            msg << "cole_hopf: psi has a node near x = " << g.x(i);
            throw NumericalError(msg.str());
        }
        sign = s;
        first = std::min(first, i);
        last = i;
    }
    for (std::size_t i = first; i <= last; ++i) {
        if (std::abs(psi[i]) <= floor) {
            std::ostringstream msg;
            msg << "cole_hopf: psi has a node near x = " << g.x(i);
            throw NumericalError(msg.str());
        }
    }
    const SampledField dpsi = first_derivative(psi);
    std::vector<double> v(g.size());
    for (std::size_t i = first; i <= last; ++i) {
        v[i] = dpsi[i] / psi[i];
    }
    std::fill(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(first), v[first]);
    std::fill(v.begin() + static_cast<std::ptrdiff_t>(last) + 1, v.end(), v[last]);
    return SampledField(g, std::move(v));
}

double riccati_residual(const SampledField& v, const SampledField& u, double mu, MiuraBranch branch)
{
    if (!(v.grid() == u.grid())) {
        throw DomainError("riccati_residual: v and u live on different grids");
    }
    const SampledField dv = first_derivative(v);
    const double sgn = branch == MiuraBranch::plus ? 1.0 : -1.0;
    const std::size_t skip = edge_skip(v.grid());
    double worst = 0.0;
    for (std::size_t i = skip; i + skip < v.size(); ++i) {
        worst = std::max(worst, std::abs(v[i] * v[i] + sgn * dv[i] + mu - u[i]));
    }
    return worst;
}

SusyPair partner_potentials(const SampledField& v, double mu_shift)
{
    const SampledField dv = first_derivative(v);
    std::vector<double> plus(v.size());
    std::vector<double> minus(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double sq = v[i] * v[i];
        plus[i] = sq - dv[i];
        minus[i] = sq + dv[i];
    }
    return {SampledField(v.grid(), std::move(plus)), SampledField(v.grid(), std::move(minus)), mu_shift};
}

SampledField zero_mode(const SampledField& v)
{
    const Grid& g = v.grid();
    if (g.periodic()) {
        throw DomainError("zero_mode needs a dirichlet_line grid");
    }
    const std::size_t n = g.size();
    if (!(v[0] > 0.0 && v[n - 1] < 0.0)) {
        throw NumericalError("zero mode not normalizable");
    }
    const double h = g.spacing();
    // Integral over [x_i, x_{i+1}] from the cubic through i-1..i+2;
    // trapezoid on the two outermost cells.
    auto cell = [&](std::size_t i) {
        if (i == 0 || i + 2 >= n) {
            return 0.5 * h * (v[i] + v[i + 1]);
        }
        return h / 24.0 * (-v[i - 1] + 13.0 * v[i] + 13.0 * v[i + 1] - v[i + 2]);
    };
    const std::size_t mid = n / 2;
    std::vector<double> log_psi(n, 0.0);
    for (std::size_t i = mid; i + 1 < n; ++i) {
        log_psi[i + 1] = log_psi[i] + cell(i);
    }
    for (std::size_t i = mid; i-- > 0;) {
        log_psi[i] = log_psi[i + 1] - cell(i);
    }
    const double top = *std::max_element(log_psi.begin(), log_psi.end());
    std::vector<double> psi(n);
    for (std::size_t i = 0; i < n; ++i) {
        psi[i] = std::exp(log_psi[i] - top);
    }
    SampledField field(g, std::move(psi));
    const double norm = std::sqrt(integrate(field * field));
    return field * (1.0 / norm);
}

namespace {

// Cubic interpolation of V1 at the midpoint of cell [i, i+1].
double midpoint_value(const SampledField& f, std::size_t i)
{
    const std::size_t n = f.size();
    if (i >= 1 && i + 2 < n) {
        return (-f[i - 1] + 9.0 * f[i] + 9.0 * f[i + 1] - f[i + 2]) / 16.0;
    }
    return 0.5 * (f[i] + f[i + 1]);
}

// Integrates w' = V(x) - mu - w^2 outward from the centre index; `dir` = +1
// marches right, -1 left. w is odd for even V, so the left half follows
// from the same recurrence with the step reversed.
void riccati_march(const SampledField& v1, double mu, std::size_t centre, int dir,
                   std::vector<double>& w)
{
    const std::size_t n = v1.size();
    const double h = v1.grid().spacing() * dir;
    auto rhs = [mu](double pot, double wv) { return pot - mu - wv * wv; };
    std::size_t i = centre;
    while (true) {
        const std::size_t j = dir > 0 ? i + 1 : i - 1;
        if ((dir > 0 && i + 1 >= n) || (dir < 0 && i == 0)) {
            break;
        }
        const double p0 = v1[i];
        const double p1 = v1[j];
        const double pm = midpoint_value(v1, std::min(i, j));
        const double k1 = rhs(p0, w[i]);
        const double k2 = rhs(pm, w[i] + 0.5 * h * k1);
        const double k3 = rhs(pm, w[i] + 0.5 * h * k2);
        const double k4 = rhs(p1, w[i] + h * k3);
        w[j] = w[i] + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(w[j]) || w[j] * dir < -1e8) {
            std::ostringstream msg;
            msg << "add_bound_state: phi develops a node near x = " << v1.grid().x(j);
            throw NumericalError(msg.str());
        }
        i = j;
    }
}

} // namespace

AddedState add_bound_state(const SampledField& v1, double mu_new)
{
    const Grid& g = v1.grid();
    if (g.periodic()) {
        throw DomainError("add_bound_state needs a dirichlet_line grid");
    }
    if (g.size() % 2 == 0 || std::abs(g.xmin() + g.xmax()) > 1e-9 * g.length()) {
        throw DomainError("add_bound_state needs a grid symmetric about x = 0 with odd size");
    }
    if (!std::isfinite(mu_new)) {
        throw DomainError("add_bound_state: mu_new must be finite");
    }
    const double asymptote = continuum_threshold(v1);
    if (!(mu_new < asymptote)) {
        std::ostringstream msg;
        msg << "add_bound_state: mu_new = " << mu_new << " is not below the continuum at "
            << asymptote;
        throw DomainError(msg.str());
    }
    const Spectrum existing = bound_states(assemble(v1), asymptote);
    if (!existing.eigenvalues.empty() && !(mu_new < existing.eigenvalues.front())) {
        std::ostringstream msg;
        msg << "add_bound_state: mu_new = " << mu_new << " is not below the ground state "
            << existing.eigenvalues.front();
        throw DomainError(msg.str());
    }

    const std::size_t centre = g.size() / 2;
    std::vector<double> w(g.size(), 0.0);
    riccati_march(v1, mu_new, centre, +1, w);
    riccati_march(v1, mu_new, centre, -1, w);

    std::vector<double> v(g.size());
    std::vector<double> v2(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        v[i] = -w[i];
        v2[i] = 2.0 * w[i] * w[i] - v1[i] + 2.0 * mu_new;
    }
    return {SampledField(g, std::move(v2)), SampledField(g, std::move(v))};
}

std::vector<SampledField> soliton_ladder(int levels, double q, const Grid& grid)
{
    if (levels < 1) {
        throw DomainError("soliton_ladder needs at least one level");
    }
    if (!(q > 0.0)) {
        throw DomainError("soliton_ladder needs q > 0");
    }
    std::vector<SampledField> rungs;
    SampledField current = SampledField::zeros(grid);
    for (int k = 1; k <= levels; ++k) {
        const double mu = -static_cast<double>(k * k) * q * q;
        current = add_bound_state(current, mu).potential;
        rungs.push_back(current);
    }
    return rungs;
}

PairingReport pairing_check(const SusyPair& pair, double threshold)
{
    PairingReport report;
    report.plus = bound_states(assemble(pair.plus), threshold).eigenvalues;
    report.minus = bound_states(assemble(pair.minus), threshold).eigenvalues;
    if (!report.minus.empty()) {
        report.extra_state = report.minus.front();
    }
    bool ok = report.minus.size() == report.plus.size() + 1;
    if (ok) {
        double worst = std::abs(report.minus.front());
        for (std::size_t i = 0; i < report.plus.size(); ++i) {
            worst = std::max(worst, std::abs(report.plus[i] - report.minus[i + 1]));
        }
        report.max_mismatch = worst;
        ok = worst < pairing_tolerance;
    }
    report.matched = ok;
    return report;
}

} // namespace pdmsoliton
