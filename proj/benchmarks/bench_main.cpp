// Microbenchmarks for the hot paths: propagators, closed-form evaluators,
// the coupling quadrature and the displacement operator. The interesting
// comparison is expm vs ode at the stock grid size, and how the quadrature
// cost moves with the separation parameter u.

#include <benchmark/benchmark.h>

#include "dwtrap/dynamics.hpp"
#include "dwtrap/experiments.hpp"
#include "dwtrap/geometry.hpp"
#include "dwtrap/hamiltonians.hpp"
#include "dwtrap/hilbert_space.hpp"
#include "dwtrap/local_modes.hpp"

namespace {

using namespace dwtrap;

constexpr double kPi = 3.14159265358979323846;

TimeGrid stock_grid(int n) { return {0.0, 6.0 * kPi, n, TimeScale::sideband_w}; }

void BM_propagate_expm(benchmark::State& state) {
    const Basis b(2, true);
    const auto h = build_red_sideband_well1(b, scaled_sideband_params(1.0));
    const StateVector psi0 = basis_ket(b, 1, 1, Spin::up);
    const TimeGrid grid = stock_grid(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto traj = propagate_expm(h, psi0, grid);
        benchmark::DoNotOptimize(traj.states.back());
    }
}
BENCHMARK(BM_propagate_expm)->Arg(201)->Arg(2001);

void BM_propagate_ode(benchmark::State& state) {
    const Basis b(2, true);
    const auto h = build_red_sideband_well1(b, scaled_sideband_params(1.0));
    const StateVector psi0 = basis_ket(b, 1, 1, Spin::up);
    const TimeGrid grid = stock_grid(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto traj = propagate_ode(h, psi0, grid);
        benchmark::DoNotOptimize(traj.states.back());
    }
}
BENCHMARK(BM_propagate_ode)->Arg(201)->Arg(2001);

void BM_propagate_expm_extended(benchmark::State& state) {
    // 2 levels -> dim 8, 8 levels -> dim 32
    const Basis b(static_cast<int>(state.range(0)), true);
    const auto h = build_extended_ld(b, scaled_sideband_params(1.0));
    const StateVector psi0 = basis_ket(b, 1, 1, Spin::up);
    const TimeGrid grid = stock_grid(2001);
    for (auto _ : state) {
        auto traj = propagate_expm(h, psi0, grid);
        benchmark::DoNotOptimize(traj.states.back());
    }
}
BENCHMARK(BM_propagate_expm_extended)->Arg(2)->Arg(4)->Arg(8);

void BM_closed_form_well1(benchmark::State& state) {
    const TimeGrid grid = stock_grid(2001);
    for (auto _ : state) {
        auto cs = closed_form_red_sideband(1.0, grid);
        benchmark::DoNotOptimize(cs.back());
    }
}
BENCHMARK(BM_closed_form_well1);

void BM_closed_form_both_wells(benchmark::State& state) {
    const TimeGrid grid = stock_grid(2001);
    for (auto _ : state) {
        auto cs = closed_form_both_wells(1.0, grid);
        benchmark::DoNotOptimize(cs.back());
    }
}
BENCHMARK(BM_closed_form_both_wells);

void BM_coupling_quadrature(benchmark::State& state) {
    const auto geo =
        derive_geometry(ion_species("ca40"), 2e6, 0.1 * state.range(0));
    const auto spec = default_quadrature(geo);
    for (auto _ : state) {
        const double q2 = coupling_element(2, geo, spec);
        benchmark::DoNotOptimize(q2);
    }
}
BENCHMARK(BM_coupling_quadrature)->Arg(108)->Arg(173)->Arg(300);

void BM_displacement_operator(benchmark::State& state) {
    const Basis b(static_cast<int>(state.range(0)), false);
    for (auto _ : state) {
        auto d = displacement_operator(b, 0.1, WellScope::well1);
        benchmark::DoNotOptimize(d.mat);
    }
}
BENCHMARK(BM_displacement_operator)->Arg(4)->Arg(8);

void BM_reproduce_fig1(benchmark::State& state) {
    for (auto _ : state) {
        auto series = reproduce_figure({FigureId::fig1, {0.0, 1.0}, {}});
        benchmark::DoNotOptimize(series.back().closed_vs_oracle);
    }
}
BENCHMARK(BM_reproduce_fig1);

}  // namespace

BENCHMARK_MAIN();
