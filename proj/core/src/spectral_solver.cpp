#include "pdmsoliton/spectral_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pdmsoliton/error.hpp"

namespace pdmsoliton {

Hamiltonian1D::Hamiltonian1D(SampledField potential) : potential_(std::move(potential))
{
    const Grid& g = potential_.grid();
    if (g.periodic()) {
        throw DomainError("bound-state Hamiltonian needs a dirichlet_line grid");
    }
    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
    diagonal_.resize(g.size() - 2);
    for (std::size_t i = 0; i < diagonal_.size(); ++i) {
        diagonal_[i] = 2.0 * inv_h2 + potential_[i + 1];
    }
    off_diagonal_ = -inv_h2;
}

std::size_t Hamiltonian1D::count_below(double energy) const noexcept
{
    // Signs of the LDL^T pivots of H - energy.
    const double b2 = off_diagonal_ * off_diagonal_;
    const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    std::size_t count = 0;
    double pivot = 1.0;
    for (std::size_t i = 0; i < diagonal_.size(); ++i) {
        pivot = diagonal_[i] - energy - (i == 0 ? 0.0 : b2 / pivot);
        if (pivot == 0.0) {
            pivot = -tiny;
        }
        if (pivot < 0.0) {
            ++count;
        }
    }
    return count;
}

Hamiltonian1D assemble(const SampledField& potential)
{
    return Hamiltonian1D(potential);
}

double continuum_threshold(const SampledField& potential)
{
    const std::size_t n = potential.size();
    const std::size_t edge = std::max<std::size_t>(1, n / 20);
    double sum = 0.0;
    for (std::size_t i = 0; i < edge; ++i) {
        sum += potential[i] + potential[n - 1 - i];
    }
    return sum / static_cast<double>(2 * edge);
}

namespace {

// Solves (T - shift) x = rhs for the symmetric tridiagonal T with Gaussian
// elimination and partial pivoting (second superdiagonal from row swaps).
std::vector<double> solve_shifted(const std::vector<double>& diag, double off, double shift,
                                  std::vector<double> rhs)
{
    const std::size_t n = diag.size();
    std::vector<double> d(n), du(n, 0.0), du2(n, 0.0), dl(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = diag[i] - shift;
        if (i + 1 < n) {
            du[i] = off;
            dl[i] = off;
        }
    }
    const double tiny = 1e-300;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            if (d[i] == 0.0) {
                d[i] = tiny;
            }
            const double f = dl[i] / d[i];
            dl[i] = f;
            d[i + 1] -= f * du[i];
            rhs[i + 1] -= f * rhs[i];
        } else {
            const double f = d[i] / dl[i];
            d[i] = dl[i];
            dl[i] = f;
            const double tmp = du[i];
            du[i] = d[i + 1];
            d[i + 1] = tmp - f * d[i + 1];
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -f * du[i + 1];
            }
            std::swap(rhs[i], rhs[i + 1]);
            rhs[i + 1] -= f * rhs[i];
        }
    }
    if (d[n - 1] == 0.0) {
        d[n - 1] = tiny;
    }
    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double acc = rhs[ii];
        if (ii + 1 < n) {
            acc -= du[ii] * x[ii + 1];
        }
        if (ii + 2 < n) {
            acc -= du2[ii] * x[ii + 2];
        }
        x[ii] = acc / d[ii];
    }
    return x;
}

double bisect_eigenvalue(const Hamiltonian1D& h, std::size_t index, double lo, double hi)
{
    // Invariant: count_below(lo) <= index < count_below(hi).
    while (hi - lo > eigenvalue_tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (h.count_below(mid) > index) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

void scale_to_unit_norm(std::vector<double>& v, double h)
{
    double norm2 = 0.0;
    for (double x : v) {
        norm2 += x * x;
    }
    const double s = 1.0 / std::sqrt(norm2 * h);
    for (double& x : v) {
        x *= s;
    }
}

std::vector<double> inverse_iteration(const Hamiltonian1D& h, double eigenvalue,
                                      const std::vector<std::vector<double>>& previous,
                                      const std::vector<double>& previous_values)
{
    const std::size_t n = h.dimension();
    const double scale = std::max(1.0, std::abs(eigenvalue));
    const double shift = eigenvalue + 1e-12 * scale;
    std::vector<double> x(n);
    // Deterministic start with support everywhere.
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = 1.0 + 0.5 * std::sin(0.37 * static_cast<double>(i) + 0.1);
    }
    const double h_step = h.grid().spacing();
    for (int iter = 0; iter < 4; ++iter) {
        x = solve_shifted(h.diagonal(), h.off_diagonal(), shift, std::move(x));
        // Orthogonalize against near-degenerate partners already found.
        for (std::size_t p = 0; p < previous.size(); ++p) {
            if (std::abs(previous_values[p] - eigenvalue) > 1e-6 * scale) {
                continue;
            }
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                dot += x[i] * previous[p][i];
            }
            dot *= h_step;
            for (std::size_t i = 0; i < n; ++i) {
                x[i] -= dot * previous[p][i];
            }
        }
        scale_to_unit_norm(x, h_step);
    }
    return x;
}

} // namespace

Spectrum bound_states(const Hamiltonian1D& hamiltonian, double threshold)
{
    if (!std::isfinite(threshold)) {
        throw DomainError("bound_states: threshold must be finite");
    }
    Spectrum spectrum;
    spectrum.continuum_threshold = threshold;
    const double cutoff = threshold - 1e-9;
    const std::size_t count = hamiltonian.count_below(cutoff);
    if (count == 0) {
        return spectrum;
    }
    const auto& diag = hamiltonian.diagonal();
    // Gershgorin: every eigenvalue lies above min(diag) - 2|off|.
    const double lower = *std::min_element(diag.begin(), diag.end()) -
                         2.0 * std::abs(hamiltonian.off_diagonal()) - 1.0;

    std::vector<std::vector<double>> interior_vectors;
    const Grid& grid = hamiltonian.grid();
    for (std::size_t k = 0; k < count; ++k) {
        const double lo = k == 0 ? lower : spectrum.eigenvalues.back() - eigenvalue_tolerance;
        const double value = bisect_eigenvalue(hamiltonian, k, std::min(lo, cutoff), cutoff);
        std::vector<double> vec =
            inverse_iteration(hamiltonian, value, interior_vectors, spectrum.eigenvalues);
        interior_vectors.push_back(vec);

        std::vector<double> full(grid.size(), 0.0);
        std::copy(vec.begin(), vec.end(), full.begin() + 1);
        double peak = 0.0;
        for (double x : full) {
            peak = std::max(peak, std::abs(x));
        }
        for (double x : full) {
            if (std::abs(x) > 1e-6 * peak) {
                if (x < 0.0) {
                    for (double& y : full) {
                        y = -y;
                    }
                }
                break;
            }
        }
        spectrum.eigenvalues.push_back(value);
        spectrum.eigenfunctions.emplace_back(grid, std::move(full));
    }
    return spectrum;
}

Spectrum bound_states(const SampledField& potential)
{
    return bound_states(assemble(potential), continuum_threshold(potential));
}

std::vector<double> poschl_teller_levels(double lambda, double q, double shift)
{
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw DomainError("Poschl-Teller levels need lambda > 0");
    }
    if (!(q > 0.0)) {
        throw DomainError("Poschl-Teller levels need q > 0");
    }
    std::vector<double> levels;
    for (int n = 0; static_cast<double>(n) < lambda; ++n) {
        const double d = lambda - n;
        levels.push_back(shift - d * d * q * q);
    }
    return levels;
}

ScatteringData reflection_coefficient(const SampledField& potential, double k)
{
    const Grid& g = potential.grid();
    if (g.periodic()) {
        throw DomainError("reflection_coefficient needs a dirichlet_line grid");
    }
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw DomainError("reflection_coefficient needs k > 0");
    }
    const std::size_t n = g.size();
    const double left = potential[0];
    const double right = potential[n - 1];
    if (std::abs(left - right) > 2e-6) {
        std::ostringstream msg;
        msg << "potential has different asymptotes (" << left << " vs " << right << ")";
        throw DomainError(msg.str());
    }
    const double asymptote = 0.5 * (left + right);
    const double energy = k * k;
    if (!(energy > asymptote)) {
        throw DomainError("scattering energy k^2 must exceed the asymptotic potential");
    }

    // Numerov for psi'' = f psi, f = u - E:
    //   (1 - h^2 f_{j+1}/12) psi_{j+1} = 2 (1 + 5 h^2 f_j/12) psi_j - (1 - h^2 f_{j-1}/12) psi_{j-1}
    const double h = g.spacing();
    const double h2 = h * h;
    auto f = [&](std::size_t j) { return potential[j] - energy; };
    // Exact discrete plane waves of the scheme in the asymptotic region:
    // psi_j = exp(+- i theta j) with cos(theta) = (1 + 5 h^2 f/12) / (1 - h^2 f/12).
    const double f_inf = asymptote - energy;
    const double cos_theta = (1.0 + 5.0 * h2 * f_inf / 12.0) / (1.0 - h2 * f_inf / 12.0);
    if (std::abs(cos_theta) >= 1.0) {
        throw DomainError("grid too coarse to resolve the scattering wavelength");
    }
    const double theta = std::acos(cos_theta);

    using cplx = std::complex<double>;
    auto wave = [&](double sign, std::size_t j) {
        return std::polar(1.0, sign * theta * static_cast<double>(j));
    };
    // Transmitted wave exp(+i theta j) on the last two samples.
    cplx next = wave(1.0, n - 1);
    cplx curr = wave(1.0, n - 2);
    for (std::size_t j = n - 2; j > 0; --j) {
        const cplx prev = (2.0 * (1.0 + 5.0 * h2 * f(j) / 12.0) * curr -
                           (1.0 - h2 * f(j + 1) / 12.0) * next) /
                          (1.0 - h2 * f(j - 1) / 12.0);
        next = curr;
        curr = prev;
    }
    // curr = psi_0, next = psi_1; solve psi_j = A e^{i theta j} + B e^{-i theta j}.
    const cplx p0 = curr;
    const cplx p1 = next;
    const cplx e1 = wave(1.0, 1);
    const cplx em1 = wave(-1.0, 1);
    const cplx det = em1 - e1;
    const cplx a = (p0 * em1 - p1) / det;
    const cplx b = (p1 - p0 * e1) / det;

    ScatteringData out;
    out.reflection = b / a;
    out.transmission = 1.0 / a;
    out.asymptote = asymptote;
    out.wavenumber = std::sqrt(energy - asymptote);
    return out;
}

int count_nodes(const SampledField& psi)
{
    int nodes = 0;
    int last_sign = 0;
    for (double v : psi.values()) {
        if (std::abs(v) < 1e-12) {
            continue;
        }
        const int s = v > 0.0 ? 1 : -1;
        if (last_sign != 0 && s != last_sign) {
            ++nodes;
        }
        last_sign = s;
    }
    return nodes;
}

} // namespace pdmsoliton
