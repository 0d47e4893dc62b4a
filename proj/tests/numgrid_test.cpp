#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pdmsoliton/error.hpp"
#include "pdmsoliton/field_io.hpp"
#include "pdmsoliton/fourier.hpp"
#include "pdmsoliton/numgrid.hpp"

using namespace pdmsoliton;
using oracle::sech;

namespace {
constexpr double pi = std::numbers::pi;

double interior_error(const SampledField& f, const std::function<double(double)>& exact, std::size_t skip)
{
    double worst = 0.0;
    for (std::size_t i = skip; i + skip < f.size(); ++i) {
        worst = std::max(worst, std::abs(f[i] - exact(f.x(i))));
    }
    return worst;
}
} // namespace

TEST(Grid, DirichletSpacing)
{
    const Grid g = make_uniform_grid(-20, 20, 4001, GridKind::dirichlet_line);
    EXPECT_NEAR(g.spacing(), 0.01, 1e-15);
    EXPECT_DOUBLE_EQ(g.x(0), -20.0);
    EXPECT_NEAR(g.x(4000), 20.0, 1e-12);
}

TEST(Grid, PeriodicSpacingExcludesRightEndpoint)
{
    const Grid g = make_uniform_grid(-30, 30, 1024, GridKind::periodic);
    EXPECT_DOUBLE_EQ(g.spacing(), 60.0 / 1024.0);
    EXPECT_LT(g.x(1023), 30.0);
    EXPECT_NEAR(g.x(1023) + g.spacing(), 30.0, 1e-12);
}

TEST(Grid, RejectsDegenerateInput)
{
    EXPECT_THROW(make_uniform_grid(0, 0, 100, GridKind::dirichlet_line), DomainError);
    EXPECT_THROW(make_uniform_grid(1, 0, 100, GridKind::dirichlet_line), DomainError);
    EXPECT_THROW(make_uniform_grid(0, 1, 7, GridKind::periodic), DomainError);
    EXPECT_THROW(make_uniform_grid(0, INFINITY, 100, GridKind::periodic), DomainError);
    EXPECT_THROW(make_uniform_grid(NAN, 1, 100, GridKind::periodic), DomainError);
}

TEST(Grid, AbscissaeStrictlyIncreasingAndEquallySpaced)
{
    const Grid g = make_uniform_grid(-3.7, 11.2, 997, GridKind::dirichlet_line);
    const auto xs = g.abscissae();
    for (std::size_t i = 1; i < xs.size(); ++i) {
        EXPECT_GT(xs[i], xs[i - 1]);
        EXPECT_NEAR(xs[i] - xs[i - 1], g.spacing(), 1e-13);
    }
}

TEST(SampledField, RejectsNonFiniteAndSizeMismatch)
{
    const Grid g = make_uniform_grid(0, 1, 8, GridKind::dirichlet_line);
    EXPECT_THROW(SampledField(g, std::vector<double>(7, 0.0)), DomainError);
    std::vector<double> v(8, 0.0);
    v[3] = NAN;
    EXPECT_THROW(SampledField(g, v), DomainError);
}

TEST(Derivative, QuadraticIsExact)
{
    const Grid g = make_uniform_grid(-1, 1, 201, GridKind::dirichlet_line);
    const auto f = SampledField::sample(g, [](double x) { return x * x; });
    EXPECT_LT(interior_error(derivative(f, 1), [](double x) { return 2 * x; }, 0), 1e-10);
    EXPECT_LT(interior_error(derivative(f, 2), [](double) { return 2.0; }, 0), 1e-8);
    EXPECT_LT(interior_error(derivative(f, 3), [](double) { return 0.0; }, 0), 1e-5);
}

TEST(Derivative, ConstantHasZeroDerivative)
{
    const Grid g = make_uniform_grid(-1, 1, 101, GridKind::dirichlet_line);
    const auto f = SampledField::constant(g, 3.5);
    for (int order = 1; order <= 3; ++order) {
        EXPECT_LT(derivative(f, order).max_abs(), 1e-7) << order;
    }
}

TEST(Derivative, RejectsBadOrder)
{
    const Grid g = make_uniform_grid(-1, 1, 101, GridKind::dirichlet_line);
    const auto f = SampledField::zeros(g);
    EXPECT_THROW(derivative(f, 0), DomainError);
    EXPECT_THROW(derivative(f, 4), DomainError);
}

TEST(Derivative, PeriodicSecondDerivativeConvergesAtFourthOrder)
{
    // Halving h on sin(x) must shrink the error by ~16 (at least 2^3).
    double previous = 0.0;
    for (std::size_t n : {32u, 64u, 128u}) {
        const Grid g = make_uniform_grid(-pi, pi, n, GridKind::periodic);
        const auto f = SampledField::sample(g, [](double x) { return std::sin(x); });
        const double err = interior_error(derivative(f, 2), [](double x) { return -std::sin(x); }, 0);
        if (previous > 0.0) {
            EXPECT_GT(previous / err, 8.0) << n;
            EXPECT_LT(previous / err, 20.0) << n;
        }
        previous = err;
    }
}

TEST(Derivative, RichardsonReductionOnDirichletInterior)
{
    // f = exp(sin x) with closed-form derivatives up to third order.
    auto f = [](double x) { return std::exp(std::sin(x)); };
    const std::vector<std::function<double(double)>> exact{
        [](double x) { return std::cos(x) * std::exp(std::sin(x)); },
        [](double x) { return (std::pow(std::cos(x), 2) - std::sin(x)) * std::exp(std::sin(x)); },
        [](double x) {
            const double c = std::cos(x);
            const double s = std::sin(x);
            return (c * c * c - 3 * s * c - c) * std::exp(s);
        }};
    for (int order = 1; order <= 3; ++order) {
        double previous = 0.0;
        for (std::size_t n : {201u, 401u, 801u}) {
            const Grid g = make_uniform_grid(-4, 4, n, GridKind::dirichlet_line);
            const auto d = derivative(SampledField::sample(g, f), order);
            const auto skip = static_cast<std::size_t>(0.1 * static_cast<double>(n));
            const double err = interior_error(d, exact[static_cast<std::size_t>(order - 1)], skip);
            if (previous > 0.0) {
                EXPECT_GE(previous / err, 8.0) << "order " << order << " n=" << n;
            }
            previous = err;
        }
    }
}

TEST(Derivative, Linearity)
{
    std::mt19937_64 rng(7);
    const Grid g = make_uniform_grid(-pi, pi, 128, GridKind::periodic);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p1 = oracle::random_trig(rng, 5, 1.0);
        const auto p2 = oracle::random_trig(rng, 5, 1.0);
        std::uniform_real_distribution<double> coeff(-3, 3);
        const double a = coeff(rng);
        const double b = coeff(rng);
        const auto f = SampledField::sample(g, p1);
        const auto h = SampledField::sample(g, p2);
        for (int order = 1; order <= 3; ++order) {
            const auto lhs = derivative(a * f + b * h, order);
            const auto rhs = a * derivative(f, order) + b * derivative(h, order);
            EXPECT_LT(max_abs_difference(lhs, rhs), 1e-9 * (1 + lhs.max_abs()));
        }
    }
}

TEST(Derivative, SecondOrderMatchesRepeatedFirstOrder)
{
    const Grid g = make_uniform_grid(-10, 10, 2001, GridKind::dirichlet_line);
    const auto f = SampledField::sample(g, [](double x) { return sech(x) * std::cos(2 * x); });
    const auto twice = derivative(derivative(f, 1), 1);
    const double h = g.spacing();
    EXPECT_LT(max_abs_difference(derivative(f, 2), twice, 6), 10 * h * h);
}

TEST(Derivative, EdgeStencilsStaySane)
{
    const Grid g = make_uniform_grid(0, 1, 101, GridKind::dirichlet_line);
    const auto f = SampledField::sample(g, [](double x) { return std::exp(x); });
    for (int order = 1; order <= 3; ++order) {
        const auto d = derivative(f, order);
        EXPECT_NEAR(d[0], 1.0, 1e-4) << order;
        EXPECT_NEAR(d[100], std::exp(1.0), 1e-4 * std::exp(1.0)) << order;
    }
}

TEST(SpectralDerivative, SineThirdDerivative)
{
    const Grid g = make_uniform_grid(-pi, pi, 64, GridKind::periodic);
    const auto f = SampledField::sample(g, [](double x) { return std::sin(x); });
    EXPECT_LT(interior_error(spectral_derivative(f, 3), [](double x) { return -std::cos(x); }, 0), 1e-10);
}

TEST(SpectralDerivative, ExpSin)
{
    const Grid g = make_uniform_grid(-pi, pi, 256, GridKind::periodic);
    const auto f = SampledField::sample(g, [](double x) { return std::exp(std::sin(x)); });
    EXPECT_LT(interior_error(spectral_derivative(f, 1),
                             [](double x) { return std::cos(x) * std::exp(std::sin(x)); }, 0),
              1e-9);
}

TEST(SpectralDerivative, ConstantAndErrors)
{
    const Grid g = make_uniform_grid(-pi, pi, 64, GridKind::periodic);
    for (int order = 1; order <= 4; ++order) {
        EXPECT_LT(spectral_derivative(SampledField::constant(g, 2.0), order).max_abs(), 1e-12);
    }
    const Grid line = make_uniform_grid(-pi, pi, 64, GridKind::dirichlet_line);
    EXPECT_THROW(spectral_derivative(SampledField::zeros(line), 1), DomainError);
}

TEST(Integrate, SechPowers)
{
    const Grid g = make_uniform_grid(-20, 20, 4001, GridKind::dirichlet_line);
    const auto s2 = SampledField::sample(g, [](double x) { return std::pow(sech(x), 2); });
    const auto s4 = SampledField::sample(g, [](double x) { return std::pow(sech(x), 4); });
    EXPECT_NEAR(integrate(s2), 2.0, 1e-8);
    EXPECT_NEAR(integrate(s4), 4.0 / 3.0, 1e-8);
    EXPECT_EQ(integrate(SampledField::zeros(g)), 0.0);
}

TEST(Integrate, PeriodicDerivativeIntegratesToZero)
{
    std::mt19937_64 rng(11);
    const Grid g = make_uniform_grid(-pi, pi, 96, GridKind::periodic);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = SampledField::sample(g, oracle::random_trig(rng, 6, 2.0));
        EXPECT_LT(std::abs(integrate(derivative(f, 1))), 1e-12);
        EXPECT_LT(std::abs(integrate(spectral_derivative(f, 1))), 1e-12);
    }
}

TEST(Integrate, RectangleRuleExactForTrigPolynomials)
{
    const Grid g = make_uniform_grid(0, 2 * pi, 16, GridKind::periodic);
    const auto f = SampledField::sample(g, [](double x) { return 1.5 + std::cos(3 * x) + std::pow(std::sin(x), 2); });
    EXPECT_NEAR(integrate(f), 2 * pi * 2.0, 1e-13);
}

TEST(FdWeights, ClassicCentralStencil)
{
    const std::vector<double> nodes{-2, -1, 0, 1, 2};
    const auto w = fd_weights(0.0, nodes, 2);
    const std::vector<double> expected{-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};
    for (std::size_t i = 0; i < w.size(); ++i) {
        EXPECT_NEAR(w[i], expected[i], 1e-13);
    }
}

TEST(Fourier, ShiftAndResample)
{
    const Grid g = make_uniform_grid(-pi, pi, 64, GridKind::periodic);
    const auto f = SampledField::sample(g, [](double x) { return std::exp(std::cos(x)); });
    const auto shifted = spectral_shift(f, 0.3);
    EXPECT_LT(interior_error(shifted, [](double x) { return std::exp(std::cos(x + 0.3)); }, 0), 1e-12);

    const auto fine = fourier_resample(f, 256);
    EXPECT_EQ(fine.size(), 256u);
    EXPECT_LT(interior_error(fine, [](double x) { return std::exp(std::cos(x)); }, 0), 1e-12);
}

TEST(FieldIo, CsvHeaderPrecisionAndRoundTrip)
{
    const Grid g = make_uniform_grid(-1, 1, 9, GridKind::dirichlet_line);
    const auto f = SampledField::sample(g, [](double x) { return std::exp(x) / 3.0; });
    const std::string text = to_csv(f);
    EXPECT_EQ(text.rfind("x,value\n", 0), 0u);
    const auto back = parse_csv(text, GridKind::dirichlet_line);
    EXPECT_EQ(back.grid(), g);
    for (std::size_t i = 0; i < f.size(); ++i) {
        EXPECT_EQ(back[i], f[i]); // 17 significant digits round-trip exactly
    }

    const Grid ring = make_uniform_grid(-pi, pi, 16, GridKind::periodic);
    const auto p = parse_csv(to_csv(SampledField::sample(ring, [](double x) { return std::sin(x); })),
                             GridKind::periodic);
    EXPECT_NEAR(p.grid().xmax(), pi, 1e-12);
    EXPECT_EQ(p.size(), 16u);
}

TEST(FieldIo, MalformedInput)
{
    EXPECT_THROW(parse_csv("x,value\n1,2\n", GridKind::dirichlet_line), IoError);
    EXPECT_THROW(parse_csv("x,value\n0,a\n1,2\n", GridKind::dirichlet_line), IoError);
    EXPECT_THROW(read_csv("/nonexistent/file.csv", GridKind::dirichlet_line), IoError);
}
