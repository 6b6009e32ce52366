#include <benchmark/benchmark.h>

#include "dpwlab/frames.hpp"

using namespace dpwlab;

namespace {

Potential cp1_potential() {
    Potential eta;
    eta.spec = SymmetricSpaceSpec::su(2, {1.0, -1.0});
    PotentialTerm t;
    t.power = -1;
    t.matrix = RationalMatrix(2);
    t.matrix.at(0, 1) = RationalFn::constant(1.0);
    eta.terms.push_back(t);
    return eta;
}

} // namespace

static void BM_PicardNilpotent(benchmark::State& state) {
    const Potential eta = cp1_potential();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            picard_integrate(eta, cplx(0.7, 0.3), IntegrationMode::ExactNilpotent));
}
BENCHMARK(BM_PicardNilpotent);

static void BM_PicardNumeric(benchmark::State& state) {
    const Potential eta = cp1_potential();
    for (auto _ : state)
        benchmark::DoNotOptimize(picard_integrate(eta, cplx(0.7, 0.3), IntegrationMode::Numeric));
}
BENCHMARK(BM_PicardNumeric);

static void BM_FrameGrid(benchmark::State& state) {
    const Potential eta = cp1_potential();
    GridSpec grid;
    grid.radius = 1.0;
    grid.steps = int(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_extended_frame(eta, grid));
}
BENCHMARK(BM_FrameGrid)->Arg(5)->Arg(11);

BENCHMARK_MAIN();
