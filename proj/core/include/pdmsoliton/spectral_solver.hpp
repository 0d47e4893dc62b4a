#pragma once

#include <complex>
#include <vector>

#include "pdmsoliton/numgrid.hpp"

namespace pdmsoliton {

/**
 * Second-difference discretization of -d^2/dx^2 + u with psi = 0 at both
 * ends of a dirichlet_line grid.
 *
 * The matrix acts on the n - 2 interior samples: diagonal 2/h^2 + u(x_i),
 * constant off-diagonal -1/h^2.
 */
class Hamiltonian1D {
public:
    explicit Hamiltonian1D(SampledField potential);

    const Grid& grid() const noexcept { return potential_.grid(); }
    const SampledField& potential() const noexcept { return potential_; }
    const std::vector<double>& diagonal() const noexcept { return diagonal_; }
    double off_diagonal() const noexcept { return off_diagonal_; }
    std::size_t dimension() const noexcept { return diagonal_.size(); }

    // Number of eigenvalues strictly below `energy` (Sturm count).
    std::size_t count_below(double energy) const noexcept;

private:
    SampledField potential_;
    std::vector<double> diagonal_;
    double off_diagonal_;
};

// Throws DomainError for periodic grids.
Hamiltonian1D assemble(const SampledField& potential);

// Mean of u over the outer 5% of samples at each edge (at least one each).
double continuum_threshold(const SampledField& potential);

struct Spectrum {
    std::vector<double> eigenvalues;          // ascending
    std::vector<SampledField> eigenfunctions; // unit L2 norm, same order
    double continuum_threshold = 0.0;
};

// Eigenvalue bisection tolerance (absolute).
inline constexpr double eigenvalue_tolerance = 1e-10;

/**
 * All eigenpairs strictly below threshold - 1e-9.
 *
 * Eigenvalues come from bisection on Sturm counts, eigenvectors from inverse
 * iteration. Each eigenfunction is normalized with the trapezoid rule and
 * signed so that its first sample above 1e-6 max|psi| is positive.
 */
Spectrum bound_states(const Hamiltonian1D& hamiltonian, double threshold);

// bound_states(assemble(u), continuum_threshold(u)).
Spectrum bound_states(const SampledField& potential);

// {shift - (lambda - n)^2 q^2 : n = 0, 1, ... with n < lambda}: bound levels
// of -lambda(lambda+1) q^2 sech^2(qx) + shift. Throws for lambda <= 0.
std::vector<double> poschl_teller_levels(double lambda, double q, double shift);

struct ScatteringData {
    std::complex<double> reflection;
    std::complex<double> transmission;
    double asymptote = 0.0;       // u at the edges
    double wavenumber = 0.0;      // sqrt(k^2 - asymptote)

    double flux_defect() const noexcept
    {
        return std::abs(std::norm(reflection) + std::norm(transmission) - 1.0);
    }
};

/**
 * Reflection and transmission amplitudes at energy k^2.
 *
 * A purely transmitted wave is launched at the right edge and integrated
 * leftwards with Numerov's method; the solution at the left edge is split
 * into incident and reflected discrete plane waves. Requires
 * |u(first) - u(last)| < 2e-6 and k^2 above the edge value.
 */
ScatteringData reflection_coefficient(const SampledField& potential, double k);

// Strict sign changes, ignoring samples with |psi| < 1e-12.
int count_nodes(const SampledField& psi);

} // namespace pdmsoliton
