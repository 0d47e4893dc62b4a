#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "oracles.hpp"
#include "pdmsoliton/error.hpp"
#include "pdmsoliton/spectral_solver.hpp"

using namespace pdmsoliton;
using oracle::sech;

namespace {

Grid line(double half_width, std::size_t n = 4001)
{
    return make_uniform_grid(-half_width, half_width, n, GridKind::dirichlet_line);
}

SampledField well(const Grid& g, double coupling, double q = 1.0, double shift = 0.0)
{
    return SampledField::sample(g, [=](double x) { return shift - coupling * q * q * std::pow(sech(q * x), 2); });
}

// Eigenvalues below `cut` from Eigen's tridiagonal QR on the same matrix.
std::vector<double> eigen_route(const Hamiltonian1D& h, double cut)
{
    const auto n = static_cast<Eigen::Index>(h.dimension());
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(n - 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        diag[i] = h.diagonal()[static_cast<std::size_t>(i)];
    }
    sub.setConstant(h.off_diagonal());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (solver.eigenvalues()[i] < cut) {
            out.push_back(solver.eigenvalues()[i]);
        }
    }
    return out;
}

} // namespace

TEST(Assemble, TridiagonalLayout)
{
    const Grid g = line(20);
    const auto h0 = assemble(SampledField::zeros(g));
    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
    ASSERT_EQ(h0.dimension(), 3999u);
    EXPECT_DOUBLE_EQ(h0.diagonal()[0], 2 * inv_h2);
    EXPECT_DOUBLE_EQ(h0.off_diagonal(), -inv_h2);

    const auto u = well(g, 2.0);
    const auto h = assemble(u);
    for (std::size_t i = 0; i < h.dimension(); i += 100) {
        EXPECT_DOUBLE_EQ(h.diagonal()[i], 2 * inv_h2 + u[i + 1]);
    }
}

TEST(Assemble, RejectsPeriodicGridAndNaN)
{
    const Grid ring = make_uniform_grid(-20, 20, 256, GridKind::periodic);
    EXPECT_THROW(assemble(SampledField::zeros(ring)), DomainError);
    const Grid g = line(20, 101);
    std::vector<double> v(101, 0.0);
    v[50] = NAN;
    EXPECT_THROW(assemble(SampledField(g, v)), DomainError);
}

TEST(BoundStates, OneSoliton)
{
    const auto s = bound_states(well(line(20), 2.0));
    ASSERT_EQ(s.eigenvalues.size(), 1u);
    EXPECT_NEAR(s.eigenvalues[0], -1.0, 1e-4);
    EXPECT_NEAR(s.continuum_threshold, 0.0, 1e-12);
}

TEST(BoundStates, TwoSoliton)
{
    const auto s = bound_states(well(line(20), 6.0));
    ASSERT_EQ(s.eigenvalues.size(), 2u);
    EXPECT_NEAR(s.eigenvalues[0], -4.0, 1e-4);
    EXPECT_NEAR(s.eigenvalues[1], -1.0, 1e-4);
}

TEST(BoundStates, FreeParticleHasNone)
{
    EXPECT_TRUE(bound_states(SampledField::zeros(line(20))).eigenvalues.empty());
}

TEST(BoundStates, BddTwoSolitonThreshold)
{
    const auto s = bound_states(well(line(20), 6.0, 1.0, 1.0));
    EXPECT_NEAR(s.continuum_threshold, 1.0, 1e-12);
    ASSERT_EQ(s.eigenvalues.size(), 2u);
    EXPECT_NEAR(s.eigenvalues[0], -3.0, 1e-4);
    EXPECT_NEAR(s.eigenvalues[1], 0.0, 1e-4);
}

TEST(BoundStates, ThreeSolitonMatchesOracle)
{
    const auto s = bound_states(well(line(20), 12.0));
    const auto expected = poschl_teller_levels(3, 1, 0);
    ASSERT_EQ(s.eigenvalues.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_NEAR(s.eigenvalues[i], expected[i], 1e-3);
    }
}

TEST(BoundStates, AgreesWithIndependentTridiagonalRoute)
{
    const Grid g = line(15, 1501);
    for (double coupling : {2.0, 3.0, 6.0, 12.0}) {
        const auto h = assemble(well(g, coupling));
        const auto ours = bound_states(h, 0.0).eigenvalues;
        const auto ref = eigen_route(h, -1e-9);
        ASSERT_EQ(ours.size(), ref.size()) << coupling;
        for (std::size_t i = 0; i < ref.size(); ++i) {
            EXPECT_NEAR(ours[i], ref[i], 1e-9) << coupling;
        }
    }
}

TEST(BoundStates, SpectrumInvariants)
{
    for (double q : {0.5, 1.0, 2.0}) {
        const auto s = bound_states(well(line(20 / q), 12.0, q));
        for (std::size_t n = 0; n < s.eigenvalues.size(); ++n) {
            EXPECT_LT(s.eigenvalues[n], s.continuum_threshold);
            if (n > 0) {
                EXPECT_GT(s.eigenvalues[n], s.eigenvalues[n - 1]);
            }
            const auto& psi = s.eigenfunctions[n];
            EXPECT_NEAR(integrate(psi * psi), 1.0, 1e-10);
            EXPECT_EQ(count_nodes(psi), static_cast<int>(n)) << "q=" << q;
        }
    }
}

TEST(BoundStates, GroundStateEigenfunction)
{
    const Grid g = line(20);
    const auto s = bound_states(well(g, 2.0));
    const auto exact = SampledField::sample(g, [](double x) { return sech(x) / std::sqrt(2.0); });
    EXPECT_LT(max_abs_difference(s.eigenfunctions[0], exact), 1e-4);
}

TEST(BoundStates, OracleEquivalenceAcrossLambdaAndQ)
{
    for (double q : {0.5, 1.0, 2.0}) {
        for (int lambda = 1; lambda <= 4; ++lambda) {
            const Grid g = line(15 / q);
            const auto s = bound_states(well(g, lambda * (lambda + 1.0), q));
            const auto expected = poschl_teller_levels(lambda, q, 0);
            ASSERT_EQ(s.eigenvalues.size(), expected.size()) << q << " " << lambda;
            for (std::size_t i = 0; i < expected.size(); ++i) {
                EXPECT_NEAR(s.eigenvalues[i] / (q * q), expected[i] / (q * q), 1e-3);
            }
        }
    }
}

TEST(BoundStates, DomainDoublingStability)
{
    // Same spacing, twice the half-width.
    const auto a = bound_states(well(line(15, 3001), 6.0)).eigenvalues;
    const auto b = bound_states(well(line(30, 6001), 6.0)).eigenvalues;
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_LT(std::abs(a[i] - b[i]), 1e-6);
    }
}

TEST(BoundStates, NonFiniteThreshold)
{
    EXPECT_THROW(bound_states(assemble(SampledField::zeros(line(5, 101))), NAN), DomainError);
}

TEST(PoschlTeller, Levels)
{
    EXPECT_EQ(poschl_teller_levels(1, 1, 0), std::vector<double>({-1.0}));
    EXPECT_EQ(poschl_teller_levels(2, 1, 0), std::vector<double>({-4.0, -1.0}));
    EXPECT_EQ(poschl_teller_levels(2, 1, 1), std::vector<double>({-3.0, 0.0}));
    const auto l = poschl_teller_levels(1.5616, 1, -1);
    ASSERT_EQ(l.size(), 2u);
    EXPECT_NEAR(l[0], -3.43859, 1e-4);
    EXPECT_NEAR(l[1], -1.31539, 1e-4);
    EXPECT_THROW(poschl_teller_levels(0, 1, 0), DomainError);
    EXPECT_THROW(poschl_teller_levels(-1, 1, 0), DomainError);
}

TEST(Reflection, IntegerWellsAreReflectionless)
{
    const Grid g = line(20);
    for (double coupling : {2.0, 6.0}) {
        for (double k : {0.5, 1.0, 2.0}) {
            const auto s = reflection_coefficient(well(g, coupling), k);
            EXPECT_LT(std::abs(s.reflection), 1e-3) << coupling << " " << k;
            EXPECT_LT(s.flux_defect(), 1e-6);
        }
    }
}

TEST(Reflection, FreeParticle)
{
    const auto s = reflection_coefficient(SampledField::zeros(line(20)), 0.7);
    EXPECT_LT(std::abs(s.reflection), 1e-12);
    EXPECT_NEAR(std::abs(s.transmission), 1.0, 1e-12);
}

TEST(Reflection, NonIntegralWellMatchesClosedForm)
{
    const Grid g = line(20);
    for (double k : {0.5, 1.0}) {
        const auto s = reflection_coefficient(well(g, 3.0), k);
        EXPECT_NEAR(std::abs(s.reflection), oracle::poschl_teller_reflection(3.0, k), 1e-5);
        EXPECT_LT(s.flux_defect(), 1e-6);
    }
    // Frozen oracle value: |R(0.5)| = 0.3335079640585821 for -3 sech^2 x.
    EXPECT_NEAR(oracle::poschl_teller_reflection(3.0, 0.5), 0.3335079640585821, 1e-14);
    EXPECT_GT(std::abs(reflection_coefficient(well(g, 3.0), 0.5).reflection), 0.01);
}

TEST(Reflection, Preconditions)
{
    const Grid g = line(20, 401);
    const auto step = SampledField::sample(g, [](double x) { return x > 0 ? 0.5 : 0.0; });
    EXPECT_THROW(reflection_coefficient(step, 1.0), DomainError);
    EXPECT_THROW(reflection_coefficient(SampledField::constant(g, 1.0), 0.5), DomainError);
    EXPECT_THROW(reflection_coefficient(SampledField::zeros(g), -1.0), DomainError);
}

TEST(CountNodes, Examples)
{
    const Grid g = line(20);
    EXPECT_EQ(count_nodes(SampledField::sample(g, [](double x) { return sech(x) / std::sqrt(2.0); })), 0);
    EXPECT_EQ(count_nodes(SampledField::sample(g, [](double x) { return std::sqrt(3.0) / 2 * sech(x) * std::tanh(x); })), 1);
    const Grid half = make_uniform_grid(0, std::numbers::pi, 1001, GridKind::dirichlet_line);
    EXPECT_EQ(count_nodes(SampledField::sample(half, [](double x) { return std::sin(3 * x); })), 2);
}
