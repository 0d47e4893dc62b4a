#include "pdmsoliton/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "pdmsoliton/error.hpp"

namespace pdmsoliton {

namespace {

// FFTW's planner is not reentrant.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

void require_periodic(const Grid& g, const char* what)
{
    if (!g.periodic()) {
        throw DomainError(std::string(what) + " requires a periodic grid");
    }
}

} // namespace

FourierTransform::FourierTransform(std::size_t n) : n_(n)
{
    if (n < 2) {
        throw DomainError("FourierTransform needs at least two points");
    }
    real_ = fftw_alloc_real(n);
    auto* spec = fftw_alloc_complex(n / 2 + 1);
    spectrum_ = spec;
    std::lock_guard lock(planner_mutex());
    forward_plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), real_, spec, FFTW_ESTIMATE);
    inverse_plan_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), spec, real_, FFTW_ESTIMATE);
}

FourierTransform::~FourierTransform() { release(); }

FourierTransform::FourierTransform(FourierTransform&& other) noexcept
    : n_(other.n_), real_(other.real_), spectrum_(other.spectrum_),
      forward_plan_(other.forward_plan_), inverse_plan_(other.inverse_plan_)
{
    other.real_ = nullptr;
    other.spectrum_ = nullptr;
    other.forward_plan_ = nullptr;
    other.inverse_plan_ = nullptr;
}

FourierTransform& FourierTransform::operator=(FourierTransform&& other) noexcept
{
    if (this != &other) {
        release();
        n_ = other.n_;
        std::swap(real_, other.real_);
        std::swap(spectrum_, other.spectrum_);
        std::swap(forward_plan_, other.forward_plan_);
        std::swap(inverse_plan_, other.inverse_plan_);
    }
    return *this;
}

void FourierTransform::release() noexcept
{
    {
        std::lock_guard lock(planner_mutex());
        if (forward_plan_ != nullptr) {
            fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
        }
        if (inverse_plan_ != nullptr) {
            fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
        }
    }
    fftw_free(real_);
    fftw_free(spectrum_);
    real_ = nullptr;
    spectrum_ = nullptr;
    forward_plan_ = nullptr;
    inverse_plan_ = nullptr;
}

void FourierTransform::forward(std::span<const double> in, std::span<std::complex<double>> out)
{
    std::copy(in.begin(), in.end(), real_);
    fftw_execute(static_cast<fftw_plan>(forward_plan_));
    const auto* spec = static_cast<const fftw_complex*>(spectrum_);
    for (std::size_t j = 0; j < modes(); ++j) {
        out[j] = {spec[j][0], spec[j][1]};
    }
}

void FourierTransform::inverse(std::span<const std::complex<double>> in, std::span<double> out)
{
    auto* spec = static_cast<fftw_complex*>(spectrum_);
    for (std::size_t j = 0; j < modes(); ++j) {
        spec[j][0] = in[j].real();
        spec[j][1] = in[j].imag();
    }
    fftw_execute(static_cast<fftw_plan>(inverse_plan_));
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        out[i] = real_[i] * scale;
    }
}

std::vector<double> wavenumbers(const Grid& grid)
{
    const std::size_t modes = grid.size() / 2 + 1;
    std::vector<double> k(modes);
    const double base = 2.0 * std::numbers::pi / grid.length();
    for (std::size_t j = 0; j < modes; ++j) {
        k[j] = base * static_cast<double>(j);
    }
    return k;
}

SampledField spectral_derivative(const SampledField& f, int order)
{
    require_periodic(f.grid(), "spectral_derivative");
    if (order < 0) {
        throw DomainError("spectral_derivative order must be non-negative");
    }
    const std::size_t n = f.size();
    FourierTransform fft(n);
    std::vector<std::complex<double>> c(fft.modes());
    fft.forward(f.values(), c);
    const auto k = wavenumbers(f.grid());
    const std::complex<double> i_unit(0.0, 1.0);
    for (std::size_t j = 0; j < c.size(); ++j) {
        c[j] *= std::pow(i_unit * k[j], order);
    }
    // The Nyquist mode has no well-defined odd derivative.
    if (n % 2 == 0 && order % 2 == 1) {
        c.back() = 0.0;
    }
    std::vector<double> out(n);
    fft.inverse(c, out);
    return SampledField(f.grid(), std::move(out));
}

SampledField spectral_shift(const SampledField& f, double shift)
{
    require_periodic(f.grid(), "spectral_shift");
    const std::size_t n = f.size();
    FourierTransform fft(n);
    std::vector<std::complex<double>> c(fft.modes());
    fft.forward(f.values(), c);
    const auto k = wavenumbers(f.grid());
    const double nyquist = c.back().real();
    for (std::size_t j = 0; j < c.size(); ++j) {
        c[j] *= std::polar(1.0, k[j] * shift);
    }
    if (n % 2 == 0) {
        // Keep the Nyquist coefficient real so the interpolant stays real.
        c.back() = nyquist * std::cos(k.back() * shift);
    }
    std::vector<double> out(n);
    fft.inverse(c, out);
    return SampledField(f.grid(), std::move(out));
}

SampledField fourier_resample(const SampledField& f, std::size_t n_new)
{
    const Grid& g = f.grid();
    require_periodic(g, "fourier_resample");
    const std::size_t n = f.size();
    if (n_new < n) {
        throw DomainError("fourier_resample only refines");
    }
    FourierTransform coarse(n);
    std::vector<std::complex<double>> c(coarse.modes());
    coarse.forward(f.values(), c);
    if (n % 2 == 0) {
        // Split the Nyquist coefficient symmetrically between +/- n/2.
        c.back() *= 0.5;
    }
    FourierTransform fine(n_new);
    std::vector<std::complex<double>> cf(fine.modes(), 0.0);
    const double scale = static_cast<double>(n_new) / static_cast<double>(n);
    for (std::size_t j = 0; j < c.size(); ++j) {
        cf[j] = c[j] * scale;
    }
    if (n % 2 == 0 && n_new == n) {
        cf.back() *= 2.0;
    }
    std::vector<double> out(n_new);
    fine.inverse(cf, out);
    return SampledField(Grid::uniform(g.xmin(), g.xmax(), n_new, GridKind::periodic), std::move(out));
}

} // namespace pdmsoliton
