#include <benchmark/benchmark.h>

#include <cmath>

#include "pdmsoliton/kdv_flow.hpp"
#include "pdmsoliton/spectral_solver.hpp"
#include "pdmsoliton/susy_factor.hpp"

using namespace pdmsoliton;

namespace {

SampledField well(const Grid& g, double c)
{
    return SampledField::sample(g, [c](double x) { return -c / std::pow(std::cosh(x), 2); });
}

void BM_BoundStates(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto u = well(make_uniform_grid(-20, 20, n, GridKind::dirichlet_line), 6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bound_states(u));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BoundStates)->Arg(1001)->Arg(2001)->Arg(4001)->Arg(8001)->Arg(16001)->Complexity();

void BM_Reflection(benchmark::State& state)
{
    const auto u = well(make_uniform_grid(-20, 20, 4001, GridKind::dirichlet_line), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(reflection_coefficient(u, 0.5));
    }
}
BENCHMARK(BM_Reflection);

void BM_AddBoundState(benchmark::State& state)
{
    const auto v1 = well(make_uniform_grid(-20, 20, 4001, GridKind::dirichlet_line), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(add_bound_state(v1, -4.0));
    }
}
BENCHMARK(BM_AddBoundState);

void BM_KdvEvolve(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const Grid g = make_uniform_grid(-30, 30, n, GridKind::periodic);
    KdVIntegrator integrator(g);
    const KdVState s0{well(g, 2), 0.0};
    const double dt = std::min(1e-3, 0.9 * integrator.stable_step(2.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrator.evolve(s0, dt, 0.1));
    }
}
BENCHMARK(BM_KdvEvolve)->Arg(512)->Arg(1024)->Arg(2048);

} // namespace

BENCHMARK_MAIN();
