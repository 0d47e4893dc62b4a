#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "pdmsoliton/numgrid.hpp"

namespace pdmsoliton {

/**
 * Real-to-complex FFT of fixed length, owning its FFTW plans.
 *
 * forward() produces the n/2 + 1 non-negative-frequency coefficients;
 * inverse() includes the 1/n normalization, so inverse(forward(f)) == f.
 * Instances are not safe to share between threads; create one per thread.
 */
class FourierTransform {
public:
    explicit FourierTransform(std::size_t n);
    ~FourierTransform();

    FourierTransform(const FourierTransform&) = delete;
    FourierTransform& operator=(const FourierTransform&) = delete;
    FourierTransform(FourierTransform&& other) noexcept;
    FourierTransform& operator=(FourierTransform&& other) noexcept;

    std::size_t size() const noexcept { return n_; }
    std::size_t modes() const noexcept { return n_ / 2 + 1; }

    void forward(std::span<const double> in, std::span<std::complex<double>> out);
    void inverse(std::span<const std::complex<double>> in, std::span<double> out);

private:
    void release() noexcept;

    std::size_t n_ = 0;
    double* real_ = nullptr;
    void* spectrum_ = nullptr;
    void* forward_plan_ = nullptr;
    void* inverse_plan_ = nullptr;
};

// Angular wavenumbers 2*pi*j/L for j = 0..n/2 of a periodic grid.
std::vector<double> wavenumbers(const Grid& grid);

// f(x + shift) by trigonometric interpolation; periodic grids only.
SampledField spectral_shift(const SampledField& f, double shift);

// Trigonometric interpolation of a periodic field onto n_new >= n points
// of the same ring (zero padding of the spectrum).
SampledField fourier_resample(const SampledField& f, std::size_t n_new);

} // namespace pdmsoliton
