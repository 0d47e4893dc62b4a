#include "pdmsoliton/kdv_flow.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "pdmsoliton/error.hpp"
#include "pdmsoliton/fourier.hpp"
#include "pdmsoliton/spectral_solver.hpp"

namespace pdmsoliton {

namespace {

void require_periodic(const Grid& g, const char* what)
{
    if (!g.periodic()) {
        throw DomainError(std::string(what) + " requires a periodic grid");
    }
}

SampledField d_dx(const SampledField& f, int order)
{
    return f.grid().periodic() ? spectral_derivative(f, order) : derivative(f, order);
}

} // namespace

SampledField kdv_rhs(const SampledField& u)
{
    require_periodic(u.grid(), "kdv_rhs");
    const SampledField u1 = spectral_derivative(u, 1);
    const SampledField u3 = spectral_derivative(u, 3);
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = 6.0 * u[i] * u1[i] - u3[i];
    }
    return SampledField(u.grid(), std::move(out));
}

SampledField mkdv_rhs(const SampledField& v, double mu)
{
    const SampledField v1 = d_dx(v, 1);
    const SampledField v3 = d_dx(v, 3);
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = 6.0 * (v[i] * v[i] + mu) * v1[i] - v3[i];
    }
    return SampledField(v.grid(), std::move(out));
}

SampledField miura_map(const SampledField& v, double mu, MiuraBranch branch)
{
    const SampledField v1 = d_dx(v, 1);
    const double sgn = branch == MiuraBranch::plus ? 1.0 : -1.0;
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = v[i] * v[i] + sgn * v1[i] + mu;
    }
    return SampledField(v.grid(), std::move(out));
}

double miura_intertwine(const SampledField& v, double mu, MiuraBranch branch)
{
    require_periodic(v.grid(), "miura_intertwine");
    const SampledField vt = mkdv_rhs(v, mu);
    const SampledField vt_x = spectral_derivative(vt, 1);
    const SampledField ut = kdv_rhs(miura_map(v, mu, branch));
    const double sgn = branch == MiuraBranch::plus ? 1.0 : -1.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        worst = std::max(worst, std::abs(2.0 * v[i] * vt[i] + sgn * vt_x[i] - ut[i]));
    }
    return worst;
}

struct KdVIntegrator::Impl {
    explicit Impl(const Grid& g) : grid(g), fft(g.size()), k(wavenumbers(g))
    {
        if (g.size() % 2 == 0) {
            k.back() = 0.0; // odd derivatives drop the Nyquist mode
        }
        k_max = 0.0;
        for (double kk : k) {
            k_max = std::max(k_max, std::abs(kk));
        }
        phys.resize(g.size());
        work.resize(fft.modes());
    }

    // dt * 3 i k FFT(u^2) from a spectral state; records max|u|.
    void nonlinear(const std::vector<std::complex<double>>& spec, double dt,
                   std::vector<std::complex<double>>& out)
    {
        fft.inverse(spec, phys);
        double peak = 0.0;
        for (double& x : phys) {
            peak = std::max(peak, std::abs(x));
            x = x * x;
        }
        last_peak = std::isfinite(peak) ? peak : std::numeric_limits<double>::infinity();
        fft.forward(phys, work);
        const std::complex<double> i_unit(0.0, 1.0);
        for (std::size_t j = 0; j < out.size(); ++j) {
            out[j] = dt * 3.0 * i_unit * k[j] * work[j];
        }
    }

    Grid grid;
    FourierTransform fft;
    std::vector<double> k;
    double k_max = 0.0;
    std::vector<double> phys;
    std::vector<std::complex<double>> work;
    double last_peak = 0.0;
};

KdVIntegrator::KdVIntegrator(const Grid& grid)
{
    require_periodic(grid, "KdVIntegrator");
    impl_ = new Impl(grid);
}

KdVIntegrator::~KdVIntegrator() { delete impl_; }

KdVIntegrator::KdVIntegrator(KdVIntegrator&& other) noexcept : impl_(other.impl_)
{
    other.impl_ = nullptr;
}

KdVIntegrator& KdVIntegrator::operator=(KdVIntegrator&& other) noexcept
{
    std::swap(impl_, other.impl_);
    return *this;
}

double KdVIntegrator::stable_step(double peak) const noexcept
{
    const double rate = 6.0 * peak * impl_->k_max;
    return rate > 0.0 ? 2.0 * std::numbers::sqrt2 / rate : std::numeric_limits<double>::infinity();
}

KdVState KdVIntegrator::evolve(const KdVState& state, double dt_max, double t_final)
{
    Impl& im = *impl_;
    if (!(state.u.grid() == im.grid)) {
        throw DomainError("KdVIntegrator: state lives on a different grid");
    }
    if (!(dt_max > 0.0) || !std::isfinite(dt_max) || !std::isfinite(t_final)) {
        throw DomainError("evolve needs finite dt_max > 0 and finite t_final");
    }
    const double span = t_final - state.t;
    if (span < 0.0) {
        throw DomainError("evolve only integrates forward in time");
    }
    if (span == 0.0) {
        return state;
    }
    const double peak0 = state.u.max_abs();
    const double dt_limit = stable_step(peak0);
    if (dt_max > dt_limit) {
        std::ostringstream msg;
        msg << "time step " << dt_max << " exceeds the stability bound " << dt_limit
            << " (dt * 6 max|u| k_max <= 2 sqrt 2)";
        throw NumericalError(msg.str());
    }
    const auto steps = static_cast<std::size_t>(std::ceil(span / dt_max - 1e-12));
    const double dt = span / static_cast<double>(steps);

    const std::size_t m = im.fft.modes();
    std::vector<std::complex<double>> v(m), a(m), b(m), c(m), d(m), tmp(m);
    std::vector<std::complex<double>> e_half(m), e_full(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double kj = im.k[j];
        e_half[j] = std::polar(1.0, kj * kj * kj * dt * 0.5);
        e_full[j] = e_half[j] * e_half[j];
    }
    im.fft.forward(state.u.values(), v);
    const double guard = blow_up_factor * peak0;

    for (std::size_t step = 0; step < steps; ++step) {
        im.nonlinear(v, dt, a);
        if (!(im.last_peak <= guard)) {
            std::ostringstream msg;
            msg << "blow-up guard: max|u| = " << im.last_peak << " at t = "
                << state.t + static_cast<double>(step) * dt << " exceeds " << guard;
            throw NumericalError(msg.str());
        }
        for (std::size_t j = 0; j < m; ++j) {
            tmp[j] = e_half[j] * (v[j] + 0.5 * a[j]);
        }
        im.nonlinear(tmp, dt, b);
        for (std::size_t j = 0; j < m; ++j) {
            tmp[j] = e_half[j] * v[j] + 0.5 * b[j];
        }
        im.nonlinear(tmp, dt, c);
        for (std::size_t j = 0; j < m; ++j) {
            tmp[j] = e_full[j] * v[j] + e_half[j] * c[j];
        }
        im.nonlinear(tmp, dt, d);
        for (std::size_t j = 0; j < m; ++j) {
            v[j] = e_full[j] * v[j] +
                   (e_full[j] * a[j] + 2.0 * e_half[j] * (b[j] + c[j]) + d[j]) / 6.0;
        }
    }
    std::vector<double> u(im.grid.size());
    im.fft.inverse(v, u);
    double peak = 0.0;
    for (double x : u) {
        peak = std::max(peak, std::abs(x));
    }
    if (!(peak <= guard)) {
        throw NumericalError("blow-up guard tripped at the final step");
    }
    return {SampledField(im.grid, std::move(u)), t_final};
}

KdVState evolve(const KdVState& state, double dt_max, double t_final)
{
    KdVIntegrator integrator(state.u.grid());
    return integrator.evolve(state, dt_max, t_final);
}

std::vector<KdVState> evolve_snapshots(const KdVState& state, double dt_max, double t_final,
                                       int samples)
{
    if (samples < 1) {
        throw DomainError("evolve_snapshots needs at least one sample");
    }
    KdVIntegrator integrator(state.u.grid());
    std::vector<KdVState> out{state};
    const double span = t_final - state.t;
    for (int s = 1; s <= samples; ++s) {
        const double t = state.t + span * static_cast<double>(s) / samples;
        out.push_back(integrator.evolve(out.back(), dt_max, t));
    }
    return out;
}

ConservedCharges conserved_charges(const SampledField& u)
{
    require_periodic(u.grid(), "conserved_charges");
    const SampledField ux = spectral_derivative(u, 1);
    ConservedCharges c;
    c.c1 = integrate(u);
    c.c2 = integrate(u * u);
    c.c3 = integrate(u.map_with_x([](double, double x) { return x * x * x; }) + 0.5 * (ux * ux));
    return c;
}

SampledField galilean_boost(const SampledField& u, double c, double t)
{
    require_periodic(u.grid(), "galilean_boost");
    if (c == 0.0) {
        return u;
    }
    return spectral_shift(u, 6.0 * c * t) + c;
}

std::vector<double> periodic_window_spectrum(const SampledField& u, std::size_t refine)
{
    require_periodic(u.grid(), "periodic_window_spectrum");
    const SampledField fine = fourier_resample(u, u.size() * std::max<std::size_t>(refine, 1));
    const Grid& fg = fine.grid();
    const Grid line = Grid::uniform(fg.xmin(), fg.x(fg.size() - 1), fg.size(), GridKind::dirichlet_line);
    const SampledField window(line, std::vector<double>(fine.values().begin(), fine.values().end()));
    return bound_states(window).eigenvalues;
}

IsospectralReport isospectral_report(const SampledField& u0, double t_final, int samples,
                                     const IsospectralOptions& options)
{
    const auto states = evolve_snapshots({u0, 0.0}, options.dt, t_final, samples);
    IsospectralReport report;
    for (const auto& s : states) {
        report.times.push_back(s.t);
        report.spectra.push_back(periodic_window_spectrum(s.u, options.refine));
    }
    const auto& ref = report.spectra.front();
    for (const auto& spec : report.spectra) {
        if (spec.size() != ref.size()) {
            report.drift = std::numeric_limits<double>::infinity();
            break;
        }
        for (std::size_t i = 0; i < spec.size(); ++i) {
            report.drift = std::max(report.drift, std::abs(spec[i] - ref[i]));
        }
    }
    return report;
}

double isospectral_drift(const SampledField& u0, double t_final, int samples,
                         const IsospectralOptions& options)
{
    return isospectral_report(u0, t_final, samples, options).drift;
}

} // namespace pdmsoliton
