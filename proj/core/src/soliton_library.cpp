#include "pdmsoliton/soliton_library.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pdmsoliton/error.hpp"
#include "pdmsoliton/spectral_solver.hpp"
#include "pdmsoliton/susy_factor.hpp"

namespace pdmsoliton {

namespace {

double sech(double x) { return 1.0 / std::cosh(x); }

void require_positive_q(double q)
{
    if (!(q > 0.0) || !std::isfinite(q)) {
        throw DomainError("soliton data needs q > 0");
    }
}

} // namespace

std::vector<SolitonTriple> soliton_triples(double q)
{
    require_positive_q(q);
    const double q2 = q * q;
    std::vector<SolitonTriple> out;
    out.push_back({"1-soliton",
                   [q, q2](double x) { return -2.0 * q2 * std::pow(sech(q * x), 2); },
                   [q](double x) { return std::sqrt(q / 2.0) * sech(q * x); },
                   [q](double x) { return -q * std::tanh(q * x); },
                   -q2, 0.0});
    out.push_back({"2-soliton-a",
                   [q, q2](double x) { return -6.0 * q2 * std::pow(sech(q * x), 2); },
                   [q](double x) { return std::sqrt(3.0 * q) / 2.0 * std::pow(sech(q * x), 2); },
                   [q](double x) { return -2.0 * q * std::tanh(q * x); },
                   -4.0 * q2, 0.0});
    out.push_back({"2-soliton-b",
                   [q, q2](double x) { return -6.0 * q2 * std::pow(sech(q * x), 2); },
                   [q](double x) { return std::sqrt(1.5 * q) * sech(q * x) * std::tanh(q * x); },
                   [q](double x) {
                       const double t = std::tanh(q * x);
                       return q * (1.0 - 2.0 * t * t) / t;
                   },
                   -q2, 0.1 / q});
    return out;
}

TripleResiduals check_triple(const SolitonTriple& triple, double q, std::size_t n)
{
    require_positive_q(q);
    const double half = 20.0 / q;
    const Grid full = Grid::uniform(-half, half, n, GridKind::dirichlet_line);
    const SampledField psi = SampledField::sample(full, triple.psi);
    const SampledField u0 = SampledField::sample(full, triple.u0);

    TripleResiduals r;
    r.norm_defect = std::abs(integrate(psi * psi) - 1.0);

    const SampledField psi_xx = derivative(psi, 2);
    for (std::size_t i = 3; i + 3 < n; ++i) {
        r.eigen = std::max(r.eigen, std::abs(-psi_xx[i] + (u0[i] - triple.mu) * psi[i]));
    }

    if (triple.puncture > 0.0) {
        // Fine window next to the pole, coarse one beyond; only |x| >= puncture is scored.
        const double p = triple.puncture;
        const double join = 2.0 / q;
        const std::size_t near_n = 2 * n;
        const double near_h = (join - p) / static_cast<double>(near_n - 4);
        auto window = [&](double a, double b, std::size_t m, double lo, double hi) {
            const Grid g = Grid::uniform(a, b, m, GridKind::dirichlet_line);
            const SampledField v = SampledField::sample(g, triple.v);
            const SampledField u = SampledField::sample(g, triple.u0);
            const SampledField dv = derivative(v, 1);
            double worst = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double ax = std::abs(g.x(i));
                if (ax >= lo && ax <= hi) {
                    worst = std::max(worst, std::abs(v[i] * v[i] + dv[i] + triple.mu - u[i]));
                }
            }
            return worst;
        };
        for (double sign : {-1.0, 1.0}) {
            const double a = p - 3.0 * near_h;
            const double b = a + near_h * static_cast<double>(near_n - 1);
            const double near = sign > 0 ? window(a, b, near_n, p, join)
                                         : window(-b, -a, near_n, p, join);
            const double far = sign > 0 ? window(join / 2, half, n / 2 + 1, join, half)
                                        : window(-half, -join / 2, n / 2 + 1, join, half);
            r.riccati = std::max({r.riccati, near, far});
        }
    } else {
        r.riccati = riccati_residual(SampledField::sample(full, triple.v), u0, triple.mu);
    }
    return r;
}

SampledField traveling_one_soliton(double q, double t, const Grid& grid)
{
    require_positive_q(q);
    const double centre = 4.0 * q * q * t;
    const double amp = -2.0 * q * q;
    if (!grid.periodic()) {
        return SampledField::sample(grid, [=](double x) { return amp * std::pow(sech(q * (x - centre)), 2); });
    }
    // Place the crest at the periodic image of `centre` nearest each sample.
    const double length = grid.length();
    return SampledField::sample(grid, [=](double x) {
        double d = std::remainder(x - centre, length);
        return amp * std::pow(sech(q * d), 2);
    });
}

std::string to_string(ClaimStatus status)
{
    return status == ClaimStatus::verified ? "verified" : "recorded_only";
}

std::vector<SchemeClaim> scheme_catalog(double q)
{
    require_positive_q(q);
    const double q2 = q * q;
    auto sech2 = [q](double x) { return std::pow(sech(q * x), 2); };
    auto claim = [](AmbiguityScheme s, std::string soliton, std::string label, FieldBuilder f,
                    std::vector<double> mus, double coupling, ClaimStatus status) {
        const double lambda = lambda_for_coupling(coupling);
        return SchemeClaim{std::move(s), std::move(soliton), std::move(label), std::move(f),
                           std::move(mus), lambda, -(lambda + 1.0), status};
    };
    using schemes::bastard;
    using schemes::bendaniel_duke;
    using schemes::li_kuhn;
    using schemes::zhu_kroemer;
    const auto verified = ClaimStatus::verified;
    const auto recorded = ClaimStatus::recorded_only;

    std::vector<SchemeClaim> rows;
    rows.push_back(claim(zhu_kroemer(), "1-soliton", "-2 q^2 sech^2(qx)",
                         [=](double x) { return -2.0 * q2 * sech2(x); }, {-q2}, 2.0, verified));
    rows.push_back(claim(zhu_kroemer(), "2-soliton", "-6 q^2 sech^2(qx)",
                         [=](double x) { return -6.0 * q2 * sech2(x); }, {-4.0 * q2, -q2}, 6.0, verified));
    rows.push_back(claim(bendaniel_duke(), "1-soliton", "q^2 (1 - 2 sech^2(qx))",
                         [=](double x) { return q2 * (1.0 - 2.0 * sech2(x)); }, {0.0}, 2.0, verified));
    rows.push_back(claim(bendaniel_duke(), "2-soliton", "q^2 (1 - 6 sech^2(qx))",
                         [=](double x) { return q2 * (1.0 - 6.0 * sech2(x)); }, {-3.0 * q2, 0.0}, 6.0,
                         verified));
    rows.push_back(claim(bastard(), "1-soliton", "-q^2 (1 + 3 sech^2(qx))",
                         [=](double x) { return -q2 * (1.0 + 3.0 * sech2(x)); }, {-2.0 * q2}, 4.0,
                         recorded));
    rows.push_back(claim(bastard(), "2-soliton", "-q^2 (1 + 6 sech^2(qx))",
                         [=](double x) { return -q2 * (1.0 + 6.0 * sech2(x)); }, {-5.0 * q2, -2.0 * q2},
                         7.0, recorded));
    rows.push_back(claim(li_kuhn(), "1-soliton", "-2 q^2 sech^2(qx)",
                         [=](double x) { return -2.0 * q2 * sech2(x); }, {-q2}, 2.5, verified));
    rows.push_back(claim(li_kuhn(), "2-soliton", "-6 q^2 sech^2(qx)",
                         [=](double x) { return -6.0 * q2 * sech2(x); }, {-4.0 * q2, -q2}, 6.5, verified));
    std::sort(rows.begin(), rows.end(),
              [](const SchemeClaim& a, const SchemeClaim& b) { return a.key() < b.key(); });
    return rows;
}

ClaimResult check_claim(const SchemeClaim& claim, double q, std::size_t n, const ClaimTolerances& tol)
{
    require_positive_q(q);
    const double half = 20.0 / q;
    const Grid grid = Grid::uniform(-half, half, n, GridKind::dirichlet_line);
    const SampledField form = SampledField::sample(grid, claim.u_form);

    ClaimResult result{claim, {}, 0.0, 0.0, false, false};
    for (double lambda : {claim.lambda, claim.lambda_dual}) {
        const SampledField u =
            effective_potential_u(PdmProblem::sech_squared(claim.scheme, q, lambda), grid);
        result.max_u_deviation = std::max(result.max_u_deviation, max_abs_difference(u, form));
    }
    result.u_matches = result.max_u_deviation < tol.u_form;

    result.mu_computed = bound_states(form).eigenvalues;
    for (double mu : claim.mu_claimed) {
        double best = std::numeric_limits<double>::infinity();
        for (double m : result.mu_computed) {
            best = std::min(best, std::abs(m - mu));
        }
        result.max_mu_deviation = std::max(result.max_mu_deviation, best);
    }
    result.mu_matches = result.max_mu_deviation < tol.mu * q * q;
    return result;
}

} // namespace pdmsoliton
