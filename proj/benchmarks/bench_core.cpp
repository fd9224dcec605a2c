#include <benchmark/benchmark.h>

#include <cmath>

#include "dlab/concentration.hpp"
#include "dlab/field.hpp"
#include "dlab/radial.hpp"
#include "dlab/solver.hpp"
#include "dlab/spectral_ops.hpp"

namespace {

using namespace dlab;

SpectralField test_field(int n) {
    GridSpec grid(n);
    return SpectralField::from_function(grid, [](double x1, double x2) {
        return std::cos(3 * x1) * std::sin(2 * x2) + 0.5 * std::sin(7 * x1 + x2);
    });
}

void bm_spectral_roundtrip(benchmark::State& state) {
    auto f = test_field(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto g = SpectralField::from_physical(f.grid(), f.physical());
        benchmark::DoNotOptimize(g.spectral().data());
    }
}
BENCHMARK(bm_spectral_roundtrip)->Arg(128)->Arg(256)->Arg(512);

void bm_biot_savart(benchmark::State& state) {
    auto f = test_field(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto u = biot_savart(f);
        benchmark::DoNotOptimize(u.u1.physical().data());
    }
}
BENCHMARK(bm_biot_savart)->Arg(128)->Arg(256);

void bm_solver_step(benchmark::State& state) {
    auto f = test_field(static_cast<int>(state.range(0)));
    VorticitySolver solver(f, 1e-2);
    for (auto _ : state) {
        solver.step(1e-4);
        benchmark::DoNotOptimize(solver.time());
    }
}
BENCHMARK(bm_solver_step)->Arg(128)->Arg(256);

void bm_concentration(benchmark::State& state) {
    auto f = test_field(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(concentration(f, 0.25));
}
BENCHMARK(bm_concentration)->Arg(128)->Arg(256);

void bm_radial_heat_evolve(benchmark::State& state) {
    auto phi = make_annular_profile(AnnularSpec{});
    for (auto _ : state) {
        auto evolved = radial_heat_evolve(phi, 1.0, 0.1, 256);
        benchmark::DoNotOptimize(evolved.values.data());
    }
}
BENCHMARK(bm_radial_heat_evolve);

}  // namespace

BENCHMARK_MAIN();
