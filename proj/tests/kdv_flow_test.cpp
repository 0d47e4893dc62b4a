#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pdmsoliton/error.hpp"
#include "pdmsoliton/kdv_flow.hpp"
#include "pdmsoliton/soliton_library.hpp"

using namespace pdmsoliton;
using oracle::sech;

namespace {

Grid ring(double half, std::size_t n)
{
    return make_uniform_grid(-half, half, n, GridKind::periodic);
}

SampledField well(const Grid& g, double c, double q = 1.0)
{
    return SampledField::sample(g, [=](double x) { return -c * q * q * std::pow(sech(q * x), 2); });
}

SampledField reflect(const SampledField& f)
{
    // x -> -x on a symmetric ring: sample i maps to (n - i) mod n.
    const std::size_t n = f.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = f[(n - i) % n];
    }
    return SampledField(f.grid(), std::move(out));
}

double centroid(const SampledField& u)
{
    return integrate(u.map_with_x([](double x, double v) { return x * v; })) / integrate(u);
}

} // namespace

TEST(KdvRhs, Examples)
{
    const Grid g = ring(std::numbers::pi, 64);
    EXPECT_LT(kdv_rhs(SampledField::constant(g, 1.7)).max_abs(), 1e-12);
    const auto r = kdv_rhs(SampledField::sample(g, [](double x) { return std::sin(x); }));
    const auto e = SampledField::sample(g, [](double x) { return 3 * std::sin(2 * x) + std::cos(x); });
    EXPECT_LT(max_abs_difference(r, e), 1e-11);

    const Grid big = ring(30, 1024);
    const auto s = kdv_rhs(well(big, 2));
    const auto travel = SampledField::sample(big, [](double x) { return -16 * std::pow(sech(x), 2) * std::tanh(x); });
    EXPECT_LT(max_abs_difference(s, travel), 1e-8);
    EXPECT_THROW(kdv_rhs(SampledField::zeros(make_uniform_grid(-1, 1, 32, GridKind::dirichlet_line))), DomainError);
}

TEST(MkdvRhs, Examples)
{
    const Grid line = make_uniform_grid(-20, 20, 4001, GridKind::dirichlet_line);
    EXPECT_LT(mkdv_rhs(SampledField::zeros(line), -3).max_abs(), 1e-14);
    const auto r = mkdv_rhs(SampledField::sample(line, [](double x) { return -std::tanh(x); }), -1);
    EXPECT_NEAR(r[line.nearest_index(0.0)], 4.0, 1e-6);
    const auto closed = SampledField::sample(line, [](double x) { return 4 * std::pow(sech(x), 2); });
    EXPECT_LT(max_abs_difference(r, closed, 4), 1e-5);

    const Grid g = ring(std::numbers::pi, 64);
    const auto m = mkdv_rhs(SampledField::sample(g, [](double x) { return std::sin(x); }), 0);
    const auto e = SampledField::sample(g, [](double x) {
        return 6 * std::sin(x) * std::sin(x) * std::cos(x) + std::cos(x);
    });
    EXPECT_LT(max_abs_difference(m, e), 1e-11);
}

TEST(MiuraMap, Examples)
{
    const Grid line = make_uniform_grid(-20, 20, 4001, GridKind::dirichlet_line);
    const auto u = miura_map(SampledField::sample(line, [](double x) { return -std::tanh(x); }), -1);
    EXPECT_LT(max_abs_difference(u, well(line, 2)), 1e-6);
    EXPECT_EQ(miura_map(SampledField::zeros(line), 0).max_abs(), 0.0);

    // v2b has a pole at 0; check on the punctured half-lines.
    for (double q : {0.5, 1.0, 2.0}) {
        for (double sign : {1.0, -1.0}) {
            const double a = 0.1 / q;
            const double b = 20 / q;
            const Grid half = sign > 0 ? make_uniform_grid(a, b, 8001, GridKind::dirichlet_line)
                                       : make_uniform_grid(-b, -a, 8001, GridKind::dirichlet_line);
            const auto v = SampledField::sample(half, [q](double x) {
                const double t = std::tanh(q * x);
                return q * (1 - 2 * t * t) / t;
            });
            const auto u2 = miura_map(v, -q * q);
            EXPECT_LT(max_abs_difference(u2, well(half, 6, q), 3) / (q * q), 1e-4) << q << " " << sign;
        }
    }
}

TEST(MiuraIntertwine, Examples)
{
    const Grid g = ring(std::numbers::pi, 256);
    for (double mu : {0.0, -1.0}) {
        const auto v1 = SampledField::sample(g, [](double x) { return 0.3 * std::sin(x); });
        const auto v2 = SampledField::sample(g, [](double x) { return 0.5 * std::sin(x) + 0.2 * std::cos(2 * x); });
        EXPECT_LT(miura_intertwine(v1, mu), 1e-8);
        EXPECT_LT(miura_intertwine(v2, mu), 1e-8);
        EXPECT_LT(miura_intertwine(v2, mu, MiuraBranch::minus), 1e-8);
    }
    EXPECT_EQ(miura_intertwine(SampledField::constant(g, 0.4), 2.5), 0.0);
}

TEST(MiuraIntertwine, RandomSmoothFields)
{
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> mus(-2, 2);
    const Grid g = ring(std::numbers::pi, 256);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = oracle::random_trig(rng, 4, 0.6);
        const auto v = SampledField::sample(g, [&](double x) { return p(x); });
        const double mu = mus(rng);
        EXPECT_LT(miura_intertwine(v, mu), 1e-8) << trial;
        EXPECT_LT(miura_intertwine(v, mu, MiuraBranch::minus), 1e-8) << trial;
    }
}

TEST(Evolve, OneSolitonTransport)
{
    const Grid g = ring(30, 1024);
    const auto t0 = std::chrono::steady_clock::now();
    const auto out = evolve({well(g, 2), 0.0}, 1e-3, 0.5);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    EXPECT_DOUBLE_EQ(out.t, 0.5);
    EXPECT_LT(max_abs_difference(out.u, traveling_one_soliton(1, 0.5, g)), 1e-3);
    EXPECT_LT(secs, 10.0);
}

TEST(Evolve, ZeroStaysZero)
{
    const Grid g = ring(30, 256);
    EXPECT_EQ(evolve({SampledField::zeros(g), 0.0}, 1e-2, 1.0).u.max_abs(), 0.0);
}

TEST(Evolve, StabilityBoundAndPreconditions)
{
    const Grid g = ring(30, 1024);
    KdVIntegrator integrator(g);
    const double limit = integrator.stable_step(2.0);
    // Nyquist is dropped, so the largest retained wavenumber is (n/2 - 1) 2 pi / L.
    const double k_max = (512.0 - 1.0) * 2 * std::numbers::pi / 60.0;
    EXPECT_NEAR(limit, 2 * std::sqrt(2.0) / (6 * 2 * k_max), 1e-15);
    EXPECT_THROW(evolve({well(g, 2), 0.0}, 2 * limit, 0.5), NumericalError);
    EXPECT_NO_THROW(evolve({well(g, 2), 0.0}, 0.9 * limit, 0.05));
    EXPECT_THROW(evolve({well(make_uniform_grid(-30, 30, 1024, GridKind::dirichlet_line), 2), 0.0}, 1e-3, 0.1),
                 DomainError);
    EXPECT_THROW(evolve({well(g, 2), 0.0}, -1e-3, 0.1), DomainError);
}

TEST(Evolve, SnapshotsAreEquallySpaced)
{
    const Grid g = ring(30, 512);
    const auto snaps = evolve_snapshots({well(g, 2), 0.0}, 1e-3, 0.2, 4);
    ASSERT_EQ(snaps.size(), 5u);
    for (std::size_t i = 0; i < snaps.size(); ++i) {
        EXPECT_NEAR(snaps[i].t, 0.05 * static_cast<double>(i), 1e-14);
    }
    EXPECT_THROW(evolve_snapshots({well(g, 2), 0.0}, 1e-3, 0.2, 0), DomainError);
}

TEST(Evolve, SolitonSpeedScalesAsFourQSquared)
{
    for (double q : {0.5, 1.0, 2.0}) {
        const Grid g = ring(30 / q, 1024);
        const double tf = 0.5 / (q * q * q);
        const auto out = evolve({well(g, 2, q), 0.0}, 1e-3 / (q * q * q), tf);
        const double speed = (centroid(out.u) - centroid(well(g, 2, q))) / tf;
        EXPECT_NEAR(speed / (4 * q * q), 1.0, 0.01) << "q=" << q;
    }
}

TEST(Evolve, TimeReversal)
{
    const Grid g = ring(30, 1024);
    const auto u0 = well(g, 2);
    const auto forward = evolve({u0, 0.0}, 1e-3, 0.5);
    const double forward_error = max_abs_difference(forward.u, traveling_one_soliton(1, 0.5, g));
    const auto back = evolve({reflect(forward.u), 0.0}, 1e-3, 0.5);
    EXPECT_LT(max_abs_difference(back.u, reflect(u0)), 2 * forward_error);
}

TEST(Charges, ClosedForms)
{
    const Grid g = ring(30, 1024);
    const auto one = conserved_charges(well(g, 2));
    EXPECT_NEAR(one.c1, -4.0, 1e-10);
    EXPECT_NEAR(one.c2, 16.0 / 3.0, 1e-10);
    EXPECT_NEAR(one.c3, -6.4, 1e-9);
    const auto two = conserved_charges(well(g, 6));
    EXPECT_NEAR(two.c1, -12.0, 1e-10);
    EXPECT_NEAR(two.c2, 48.0, 1e-9);
    const auto zero = conserved_charges(SampledField::zeros(g));
    EXPECT_EQ(zero.c1, 0.0);
    EXPECT_EQ(zero.c2, 0.0);
    EXPECT_EQ(zero.c3, 0.0);
}

TEST(Charges, ConservedAlongTheFlow)
{
    const Grid g = ring(30, 1024);
    for (double c : {2.0, 6.0}) {
        const auto u0 = well(g, c);
        const auto ref = conserved_charges(u0);
        for (const auto& s : evolve_snapshots({u0, 0.0}, 1e-4, 0.5, 10)) {
            const auto ch = conserved_charges(s.u);
            EXPECT_LT(std::abs(ch.c1 - ref.c1), 1e-8) << c << " t=" << s.t;
            EXPECT_LT(std::abs(ch.c2 - ref.c2) / std::abs(ref.c2), 1e-6) << c << " t=" << s.t;
            EXPECT_LT(std::abs(ch.c3 - ref.c3) / std::abs(ref.c3), 1e-6) << c << " t=" << s.t;
        }
    }
}

TEST(GalileanBoost, TrivialCases)
{
    const Grid g = ring(30, 256);
    const auto u = well(g, 2);
    EXPECT_LT(max_abs_difference(galilean_boost(u, 0.0, 0.7), u), 1e-13);
    const auto a = galilean_boost(SampledField::constant(g, 0.3), -0.8, 2.0);
    EXPECT_LT(max_abs_difference(a, SampledField::constant(g, -0.5)), 1e-13);
}

TEST(GalileanBoost, BoostedSolutionSolvesKdv)
{
    const Grid g = ring(30, 1024);
    const double t = 0.25;
    const double d = 1e-3;
    const auto before = evolve({well(g, 2), 0.0}, 1e-3, t - d);
    const auto mid = evolve(before, 1e-3, t);
    const auto after = evolve(mid, 1e-3, t + d);
    for (double c : {0.5, -0.25}) {
        const auto ub = galilean_boost(before.u, c, t - d);
        const auto um = galilean_boost(mid.u, c, t);
        const auto ua = galilean_boost(after.u, c, t + d);
        const auto ut = (1.0 / (2 * d)) * (ua - ub);
        const double residual = max_abs_difference(ut, kdv_rhs(um));
        EXPECT_LT(residual, 1e-3) << "c=" << c;
        // Shifting the other way while keeping +c is not a solution.
        const auto wb = galilean_boost(before.u, -c, t - d) + 2 * c;
        const auto wm = galilean_boost(mid.u, -c, t) + 2 * c;
        const auto wa = galilean_boost(after.u, -c, t + d) + 2 * c;
        EXPECT_GT(max_abs_difference((1.0 / (2 * d)) * (wa - wb), kdv_rhs(wm)), 0.1);
    }
}

TEST(Isospectral, OneSoliton)
{
    const Grid g = ring(30, 1024);
    const auto report = isospectral_report(well(g, 2), 0.5, 5);
    ASSERT_EQ(report.times.size(), 6u);
    ASSERT_EQ(report.spectra.front().size(), 1u);
    EXPECT_NEAR(report.spectra.front()[0], -1.0, 1e-4);
    EXPECT_LT(report.drift, 1e-3);
}

TEST(Isospectral, TwoSolitonSeparates)
{
    const Grid g = ring(30, 1024);
    const auto report = isospectral_report(well(g, 6), 0.5, 5);
    ASSERT_EQ(report.spectra.back().size(), 2u);
    EXPECT_NEAR(report.spectra.back()[0], -4.0, 1e-3);
    EXPECT_NEAR(report.spectra.back()[1], -1.0, 1e-3);
    EXPECT_LT(report.drift, 1e-3);
}

TEST(Isospectral, ZeroField)
{
    const Grid g = ring(30, 256);
    EXPECT_EQ(isospectral_drift(SampledField::zeros(g), 0.5, 3), 0.0);
}
