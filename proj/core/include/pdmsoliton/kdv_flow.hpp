#pragma once

#include <cstddef>
#include <vector>

#include "pdmsoliton/numgrid.hpp"
#include "pdmsoliton/susy_factor.hpp"

namespace pdmsoliton {

// Field u on a periodic grid at time t, evolved by u_t = 6 u u' - u'''.
struct KdVState {
    SampledField u;
    double t = 0.0;
};

struct ConservedCharges {
    double c1 = 0.0; // int u
    double c2 = 0.0; // int u^2
    double c3 = 0.0; // int (u^3 + u'^2 / 2), the Hamiltonian of the flow
};

// 6 u u' - u''' with spectral derivatives; periodic grids only.
SampledField kdv_rhs(const SampledField& u);

// 6 (v^2 + mu) v' - v'''. Spectral on periodic grids, finite differences
// (one-sided at the edges) on dirichlet_line grids.
SampledField mkdv_rhs(const SampledField& v, double mu);

// u = v^2 +- v' + mu.
SampledField miura_map(const SampledField& v, double mu, MiuraBranch branch = MiuraBranch::plus);

// max |(2v +- d/dx) mkdv_rhs(v, mu) - kdv_rhs(miura_map(v, mu))|; periodic.
double miura_intertwine(const SampledField& v, double mu, MiuraBranch branch = MiuraBranch::plus);

/**
 * Integrating-factor RK4 for the KdV equation.
 *
 * In Fourier space u_hat' = i k^3 u_hat + 3 i k (u^2)_hat; the linear part
 * is integrated exactly, so the step only has to resolve the advective
 * term. Enforced stability bound: dt * 6 max|u0| k_max <= 2 sqrt(2) (the
 * imaginary-axis reach of RK4); violating it throws NumericalError before
 * any step is taken. The guard also trips if max|u| exceeds 100 times its
 * initial value or becomes non-finite.
 */
class KdVIntegrator {
public:
    explicit KdVIntegrator(const Grid& grid);
    ~KdVIntegrator();
    KdVIntegrator(KdVIntegrator&&) noexcept;
    KdVIntegrator& operator=(KdVIntegrator&&) noexcept;

    // Largest dt accepted for a field of peak magnitude `peak`.
    double stable_step(double peak) const noexcept;

    // Advances to t_final with uniform steps no larger than dt_max.
    KdVState evolve(const KdVState& state, double dt_max, double t_final);

private:
    struct Impl;
    Impl* impl_;
};

inline constexpr double blow_up_factor = 100.0;

KdVState evolve(const KdVState& state, double dt_max, double t_final);

// States at `samples` + 1 equally spaced times in [state.t, t_final]
// (the first is the input state). Requires samples >= 1.
std::vector<KdVState> evolve_snapshots(const KdVState& state, double dt_max, double t_final,
                                       int samples);

ConservedCharges conserved_charges(const SampledField& u);

// u(x + 6 c t) + c by spectral interpolation; periodic grids only.
SampledField galilean_boost(const SampledField& u, double c, double t);

struct IsospectralOptions {
    double dt = 1e-3;
    // Periodic samples are Fourier-interpolated onto refine * n points
    // before the Dirichlet eigen-solve; the second-difference bias shrinks
    // by refine^2.
    std::size_t refine = 4;
};

struct IsospectralReport {
    std::vector<double> times;
    std::vector<std::vector<double>> spectra;
    double drift = 0.0;
};

/**
 * Evolves u0 and solves the bound-state problem of u(., t) on the whole
 * period treated as a Dirichlet line, at `samples` + 1 equally spaced
 * times. drift is the largest deviation of any eigenvalue from its t = 0
 * value (infinite if the number of bound states changes).
 */
IsospectralReport isospectral_report(const SampledField& u0, double t_final, int samples,
                                     const IsospectralOptions& options = {});

double isospectral_drift(const SampledField& u0, double t_final, int samples,
                         const IsospectralOptions& options = {});

// Spectrum of a periodic field seen as a Dirichlet line problem.
std::vector<double> periodic_window_spectrum(const SampledField& u, std::size_t refine);

} // namespace pdmsoliton
