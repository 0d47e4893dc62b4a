#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pdmsoliton/numgrid.hpp"

namespace pdmsoliton {

// Two-parameter von Roos ordering of the kinetic term.
struct AmbiguityScheme {
    std::string name;
    double alpha = 0.0;
    double beta = 0.0;
};

namespace schemes {
AmbiguityScheme zhu_kroemer();      // alpha = -1/2, beta = 0
AmbiguityScheme bendaniel_duke();   // alpha = 0, beta = -1
AmbiguityScheme bastard();          // alpha = -1, beta = 0
AmbiguityScheme li_kuhn();          // alpha = 0, beta = -1/2
AmbiguityScheme custom(double alpha, double beta);

// The four named schemes, in registry order.
std::vector<AmbiguityScheme> registry();

// Case-insensitive lookup of zk | bdd | bastard | likuhn. "custom" is not
// resolvable here because it needs explicit (alpha, beta).
AmbiguityScheme by_name(std::string_view name);
} // namespace schemes

// rho = alpha (alpha + beta + 1) + beta + 1, the coefficient of M'^2/M^3 in
// the effective potential.
double ordering_coefficient(const AmbiguityScheme& scheme) noexcept;

/**
 * Dimensionless mass M(x), m(x) = m0 M(x).
 *
 * Only closed forms are provided; nothing downstream differentiates M
 * numerically.
 */
class MassProfile {
public:
    enum class Kind { sech_squared, constant };

    static MassProfile sech_squared(double q);
    static MassProfile constant(double m);

    Kind kind() const noexcept { return kind_; }
    double q() const noexcept { return q_; }
    double m_const() const noexcept { return m_; }

    double value(double x) const noexcept;
    double first(double x) const noexcept;
    double second(double x) const noexcept;
    // M'/M and M''/M without dividing by M, so they stay finite where M underflows.
    double log_slope(double x) const noexcept;
    double curvature_ratio(double x) const noexcept;
    // Limits of M'^2/M^2 and M''/M as |x| -> infinity.
    double log_slope_squared_limit() const noexcept;
    double curvature_ratio_limit() const noexcept;

private:
    MassProfile(Kind kind, double q, double m) : kind_(kind), q_(q), m_(m) {}

    Kind kind_;
    double q_;
    double m_;
};

struct MassFields {
    SampledField mass;
    SampledField first;
    SampledField second;
};

MassFields mass_fields(const MassProfile& mass, const Grid& grid);

/**
 * Free-particle PDM problem with V = V0 = epsilon - lambda(lambda+1) q^2.
 *
 * Only lambda(lambda+1) enters the reduced equation, so lambda and
 * -(lambda+1) describe the same problem.
 */
struct PdmProblem {
    AmbiguityScheme scheme;
    MassProfile mass = MassProfile::sech_squared(1.0);
    double lambda = 1.0;
    double q = 1.0;
    double epsilon = 0.0;

    // Problem with M = sech^2(qx) sharing q with the coupling term.
    static PdmProblem sech_squared(AmbiguityScheme scheme, double q, double lambda, double epsilon = 0.0);

    double coupling() const noexcept { return lambda * (lambda + 1.0); }
    double free_potential() const noexcept { return epsilon - coupling() * q * q; }
};

// Larger root of lambda (lambda + 1) = coupling; throws for coupling < -1/4.
double lambda_for_coupling(double coupling);

// Reduced constant-mass potential
//   u = [3/4 - rho] (M'/M)^2 + (beta/2) M''/M - lambda(lambda+1) M q^2.
// Throws DomainError if M is not positive on the grid.
SampledField effective_potential_u(const PdmProblem& problem, const Grid& grid);

// |x| -> infinity limit of u for the problem's mass profile.
double effective_potential_limit(const PdmProblem& problem) noexcept;

// V_eff = V + (beta+1)/2 M''/M^2 - rho M'^2/M^3 evaluated on V's grid.
SampledField v_eff(const PdmProblem& problem, const SampledField& potential);

/**
 * Max-norm residual of the original PDM equation
 *   [-d^2/dx^2 + 3/4 M'^2/M^2 - 1/2 M''/M + M (V_eff - epsilon) - level] psi
 * with V = V0 and V_eff built by v_eff(). `level` is the energy mu of the
 * reduced equation (zero for the equation exactly as it stands). Dirichlet
 * grids drop three points at each edge.
 */
double pdm_residual(const SampledField& psi, const PdmProblem& problem, double level = 0.0);

// max |u_BDD(x) - u_ZK(x) - q^2| for M = sech^2(qx).
double scheme_shift_check(const Grid& grid, double q, double lambda);

} // namespace pdmsoliton
