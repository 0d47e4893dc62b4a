#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pdmsoliton/numgrid.hpp"
#include "pdmsoliton/pdm_schemes.hpp"

namespace pdmsoliton {

using FieldBuilder = std::function<double(double)>;

// Stationary soliton data: potential u0, normalized bound state psi at
// level mu, and v = psi'/psi.
struct SolitonTriple {
    std::string label;
    FieldBuilder u0;
    FieldBuilder psi;
    FieldBuilder v;
    double mu = 0.0;
    // Half-width of the excluded window around a pole of v (0 if none).
    double puncture = 0.0;
};

// "1-soliton", "2-soliton-a", "2-soliton-b" for wavenumber q > 0. The
// bound states carry a sqrt(q) factor so they are normalized for every q.
std::vector<SolitonTriple> soliton_triples(double q);

struct TripleResiduals {
    double norm_defect = 0.0;        // |int psi^2 - 1|
    double riccati = 0.0;            // v^2 + v' + mu - u0
    double eigen = 0.0;              // -psi'' + u0 psi - mu psi
};

// Residuals on [-20/q, 20/q] with `n` samples; the puncture window is
// excluded from the Riccati check, which runs on finer half-line grids.
TripleResiduals check_triple(const SolitonTriple& triple, double q, std::size_t n = 4001);

// -2 q^2 sech^2(q (x - 4 q^2 t)).
SampledField traveling_one_soliton(double q, double t, const Grid& grid);

enum class ClaimStatus { verified, recorded_only };

std::string to_string(ClaimStatus status);

/**
 * A published statement: scheme S with coupling lambda(lambda+1) produces
 * the potential u_form, whose bound levels include mu_claimed.
 */
struct SchemeClaim {
    AmbiguityScheme scheme;
    std::string soliton;
    std::string u_label;
    FieldBuilder u_form;
    std::vector<double> mu_claimed;
    double lambda = 0.0;       // the root used to build the effective potential
    double lambda_dual = 0.0;  // -(lambda + 1)
    ClaimStatus status = ClaimStatus::verified;

    std::string key() const { return scheme.name + "/" + soliton; }
};

std::vector<SchemeClaim> scheme_catalog(double q);

struct ClaimResult {
    SchemeClaim claim;
    std::vector<double> mu_computed;
    double max_u_deviation = 0.0;       // max over lambda and its dual
    double max_mu_deviation = 0.0;      // worst claimed level vs nearest computed one
    bool u_matches = false;
    bool mu_matches = false;

    // recorded_only rows never fail.
    bool passed() const noexcept
    {
        return claim.status == ClaimStatus::recorded_only || (u_matches && mu_matches);
    }
};

struct ClaimTolerances {
    double u_form = 1e-10;
    double mu = 2e-3; // multiplied by q^2
};

// Checks one claim on [-20/q, 20/q] with `n` samples.
ClaimResult check_claim(const SchemeClaim& claim, double q, std::size_t n = 4001,
                        const ClaimTolerances& tol = {});

} // namespace pdmsoliton
