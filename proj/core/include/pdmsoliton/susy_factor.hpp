#pragma once

#include <optional>
#include <vector>

#include "pdmsoliton/numgrid.hpp"

namespace pdmsoliton {

// Sign of the derivative term in u = v^2 +- v' + mu. `plus` is the Riccati
// form obtained from psi'' = (u - mu) psi with v = psi'/psi.
enum class MiuraBranch { plus, minus };

/**
 * v = psi'/psi.
 *
 * psi must be nodeless. v is formed where |psi| > 1e-12 max|psi| and
 * extended by its boundary value outside that window. Throws
 * NumericalError naming the first node otherwise.
 */
SampledField cole_hopf(const SampledField& psi);

// max |v^2 +- v' + mu - u| over the interior (three samples dropped at
// dirichlet edges). Throws DomainError for mismatched grids.
double riccati_residual(const SampledField& v, const SampledField& u, double mu,
                        MiuraBranch branch = MiuraBranch::plus);

// Partner potentials V(+-) = v^2 -+ v'. Here v is minus the usual
// SUSY superpotential W.
struct SusyPair {
    SampledField plus;
    SampledField minus;
    double mu_shift = 0.0;
};

SusyPair partner_potentials(const SampledField& v, double mu_shift = 0.0);

/**
 * Normalized psi0 proportional to exp(integral of v), integrated outward
 * from the grid midpoint with a fourth-order cumulative rule.
 *
 * Throws NumericalError("zero mode not normalizable") unless v > 0 at the
 * left edge and v < 0 at the right edge.
 */
SampledField zero_mode(const SampledField& v);

struct AddedState {
    SampledField potential;       // V2 = V(-) + mu_new
    SampledField superpotential;  // v, nodeless, with v^2 - v' = V1 - mu_new
};

/**
 * Adds a bound state at mu_new below the spectrum of the even potential V1.
 *
 * phi solves -phi'' + V1 phi = mu_new phi with phi(0) = 1, phi'(0) = 0. Its
 * log-derivative w = phi'/phi obeys w' = V1 - mu_new - w^2 and is
 * integrated outward from x = 0 with classical RK4 (V1 at half steps by
 * cubic interpolation), so phi itself never overflows. Then v = -w and
 * V2 = 2 w^2 - V1 + 2 mu_new.
 *
 * Requires a dirichlet_line grid symmetric about 0 with an odd number of
 * samples. Throws DomainError when mu_new is not below both the asymptotic
 * value and the ground state of V1, NumericalError if phi develops a node.
 */
AddedState add_bound_state(const SampledField& v1, double mu_new);

// Potentials after each rung, inserting -q^2, -4q^2, ..., -N^2 q^2 so that
// every new level is the deepest one; rung k approximates
// -k(k+1) q^2 sech^2(qx). Throws DomainError for N < 1.
std::vector<SampledField> soliton_ladder(int levels, double q, const Grid& grid);

struct PairingReport {
    std::vector<double> plus;
    std::vector<double> minus;
    bool matched = false;
    std::optional<double> extra_state;
    double max_mismatch = 0.0;
};

inline constexpr double pairing_tolerance = 2e-3;

// Bound spectra of both partners below `threshold` and the one-to-one
// check: minus = {extra ~ 0} + plus, within pairing_tolerance.
PairingReport pairing_check(const SusyPair& pair, double threshold);

} // namespace pdmsoliton
