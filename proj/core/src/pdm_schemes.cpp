#include "pdmsoliton/pdm_schemes.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "pdmsoliton/error.hpp"

namespace pdmsoliton {

namespace schemes {

AmbiguityScheme zhu_kroemer() { return {"ZK", -0.5, 0.0}; }
AmbiguityScheme bendaniel_duke() { return {"BDD", 0.0, -1.0}; }
AmbiguityScheme bastard() { return {"Bastard", -1.0, 0.0}; }
AmbiguityScheme li_kuhn() { return {"LiKuhn", 0.0, -0.5}; }

AmbiguityScheme custom(double alpha, double beta)
{
    if (!std::isfinite(alpha) || !std::isfinite(beta)) {
        throw DomainError("custom scheme needs finite alpha and beta");
    }
    return {"custom", alpha, beta};
}

std::vector<AmbiguityScheme> registry()
{
    return {zhu_kroemer(), bendaniel_duke(), bastard(), li_kuhn()};
}

AmbiguityScheme by_name(std::string_view name)
{
    std::string key(name);
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (key == "zk") {
        return zhu_kroemer();
    }
    if (key == "bdd") {
        return bendaniel_duke();
    }
    if (key == "bastard") {
        return bastard();
    }
    if (key == "likuhn") {
        return li_kuhn();
    }
    throw DomainError("unknown ordering scheme '" + std::string(name) +
                      "' (expected zk|bdd|bastard|likuhn|custom)");
}

} // namespace schemes

double ordering_coefficient(const AmbiguityScheme& scheme) noexcept
{
    return scheme.alpha * (scheme.alpha + scheme.beta + 1.0) + scheme.beta + 1.0;
}

MassProfile MassProfile::sech_squared(double q)
{
    if (!(q > 0.0) || !std::isfinite(q)) {
        throw DomainError("sech^2 mass needs q > 0");
    }
    return MassProfile(Kind::sech_squared, q, 1.0);
}

MassProfile MassProfile::constant(double m)
{
    if (!(m > 0.0) || !std::isfinite(m)) {
        throw DomainError("constant mass must be positive");
    }
    return MassProfile(Kind::constant, 0.0, m);
}

namespace {
double sech(double x) noexcept { return 1.0 / std::cosh(x); }
} // namespace

double MassProfile::value(double x) const noexcept
{
    if (kind_ == Kind::constant) {
        return m_;
    }
    const double s = sech(q_ * x);
    return s * s;
}

double MassProfile::first(double x) const noexcept
{
    if (kind_ == Kind::constant) {
        return 0.0;
    }
    const double s = sech(q_ * x);
    return -2.0 * q_ * s * s * std::tanh(q_ * x);
}

double MassProfile::second(double x) const noexcept
{
    if (kind_ == Kind::constant) {
        return 0.0;
    }
    return value(x) * curvature_ratio(x);
}

double MassProfile::log_slope(double x) const noexcept
{
    return kind_ == Kind::constant ? 0.0 : -2.0 * q_ * std::tanh(q_ * x);
}

double MassProfile::curvature_ratio(double x) const noexcept
{
    if (kind_ == Kind::constant) {
        return 0.0;
    }
    const double s = sech(q_ * x);
    return q_ * q_ * (4.0 - 6.0 * s * s);
}

double MassProfile::log_slope_squared_limit() const noexcept
{
    return kind_ == Kind::constant ? 0.0 : 4.0 * q_ * q_;
}

double MassProfile::curvature_ratio_limit() const noexcept
{
    return kind_ == Kind::constant ? 0.0 : 4.0 * q_ * q_;
}

MassFields mass_fields(const MassProfile& mass, const Grid& grid)
{
    return {SampledField::sample(grid, [&](double x) { return mass.value(x); }),
            SampledField::sample(grid, [&](double x) { return mass.first(x); }),
            SampledField::sample(grid, [&](double x) { return mass.second(x); })};
}

PdmProblem PdmProblem::sech_squared(AmbiguityScheme scheme, double q, double lambda, double epsilon)
{
    if (!std::isfinite(lambda) || !std::isfinite(epsilon)) {
        throw DomainError("lambda and epsilon must be finite");
    }
    return PdmProblem{std::move(scheme), MassProfile::sech_squared(q), lambda, q, epsilon};
}

double lambda_for_coupling(double coupling)
{
    if (!(coupling >= -0.25)) {
        throw DomainError("lambda(lambda+1) cannot be below -1/4");
    }
    return 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * coupling));
}

namespace {

void require_positive_mass(const MassProfile& mass, const Grid& grid)
{
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(mass.value(grid.x(i)) > 0.0)) {
            std::ostringstream msg;
            msg << "mass is not positive at x = " << grid.x(i);
            throw DomainError(msg.str());
        }
    }
}

void require_valid(const PdmProblem& p)
{
    if (!(p.q > 0.0) || !std::isfinite(p.q) || !std::isfinite(p.lambda) || !std::isfinite(p.epsilon)) {
        throw DomainError("PDM problem needs q > 0 and finite lambda, epsilon");
    }
}

} // namespace

SampledField effective_potential_u(const PdmProblem& problem, const Grid& grid)
{
    require_valid(problem);
    require_positive_mass(problem.mass, grid);
    const double slope_coeff = 0.75 - ordering_coefficient(problem.scheme);
    const double curvature_coeff = 0.5 * problem.scheme.beta;
    const double well = problem.coupling() * problem.q * problem.q;
    const MassProfile& m = problem.mass;
    return SampledField::sample(grid, [&](double x) {
        const double slope = m.log_slope(x);
        return slope_coeff * slope * slope + curvature_coeff * m.curvature_ratio(x) - well * m.value(x);
    });
}

double effective_potential_limit(const PdmProblem& problem) noexcept
{
    const double slope_coeff = 0.75 - ordering_coefficient(problem.scheme);
    const double constant_mass_well =
        problem.mass.kind() == MassProfile::Kind::constant
            ? problem.coupling() * problem.q * problem.q * problem.mass.m_const()
            : 0.0;
    return slope_coeff * problem.mass.log_slope_squared_limit() +
           0.5 * problem.scheme.beta * problem.mass.curvature_ratio_limit() - constant_mass_well;
}

SampledField v_eff(const PdmProblem& problem, const SampledField& potential)
{
    require_valid(problem);
    const Grid& grid = potential.grid();
    require_positive_mass(problem.mass, grid);
    const double rho = ordering_coefficient(problem.scheme);
    const double half_beta1 = 0.5 * (problem.scheme.beta + 1.0);
    const MassProfile& m = problem.mass;
    return potential.map_with_x([&](double x, double v) {
        const double mass = m.value(x);
        const double d1 = m.first(x);
        const double d2 = m.second(x);
        return v + half_beta1 * d2 / (mass * mass) - rho * d1 * d1 / (mass * mass * mass);
    });
}

double pdm_residual(const SampledField& psi, const PdmProblem& problem, double level)
{
    const Grid& grid = psi.grid();
    const SampledField veff = v_eff(problem, SampledField::constant(grid, problem.free_potential()));
    const SampledField psi_xx = derivative(psi, 2);
    const MassFields mf = mass_fields(problem.mass, grid);
    double worst = 0.0;
    const std::size_t skip = grid.periodic() ? 0 : 3;
    for (std::size_t i = skip; i + skip < grid.size(); ++i) {
        const double mass = mf.mass[i];
        const double d1 = mf.first[i];
        const double d2 = mf.second[i];
        const double coeff = 0.75 * d1 * d1 / (mass * mass) - 0.5 * d2 / mass +
                             mass * (veff[i] - problem.epsilon) - level;
        worst = std::max(worst, std::abs(-psi_xx[i] + coeff * psi[i]));
    }
    return worst;
}

double scheme_shift_check(const Grid& grid, double q, double lambda)
{
    const SampledField zk =
        effective_potential_u(PdmProblem::sech_squared(schemes::zhu_kroemer(), q, lambda), grid);
    const SampledField bdd =
        effective_potential_u(PdmProblem::sech_squared(schemes::bendaniel_duke(), q, lambda), grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        worst = std::max(worst, std::abs(bdd[i] - zk[i] - q * q));
    }
    return worst;
}

} // namespace pdmsoliton
