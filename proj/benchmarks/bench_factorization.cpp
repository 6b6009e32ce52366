#include <benchmark/benchmark.h>

#include <random>

#include "dpwlab/factorization.hpp"
#include "dpwlab/random_loops.hpp"

using namespace dpwlab;

namespace {

SymmetricSpaceSpec spec_for(int n) {
    std::vector<double> h;
    for (int i = 0; i < n; ++i) h.push_back(i % 2 == 0 ? 1.0 : -1.0);
    return SymmetricSpaceSpec::su(n, h);
}

std::vector<LaurentMatrix> make_loops(int n, int count) {
    std::mt19937 rng(7u);
    const SymmetricSpaceSpec spec = spec_for(n);
    std::vector<LaurentMatrix> loops;
    for (int i = 0; i < count; ++i) loops.push_back(random_twisted_loop(spec, rng, 4, 0.03, 1));
    return loops;
}

} // namespace

static void BM_Birkhoff(benchmark::State& state) {
    const int n = int(state.range(0));
    const auto loops = make_loops(n, 32);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(birkhoff(loops[i % loops.size()]));
        ++i;
    }
}
BENCHMARK(BM_Birkhoff)->Arg(2)->Arg(3)->Arg(4);

static void BM_Iwasawa(benchmark::State& state) {
    const int n = int(state.range(0));
    const auto loops = make_loops(n, 32);
    const SymmetricSpaceSpec spec = spec_for(n);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(iwasawa(loops[i % loops.size()], spec));
        ++i;
    }
}
BENCHMARK(BM_Iwasawa)->Arg(2)->Arg(3)->Arg(4);

static void BM_LoopMultiply(benchmark::State& state) {
    const auto loops = make_loops(3, 8);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(multiply(loops[i % loops.size()], loops[(i + 1) % loops.size()]));
        ++i;
    }
}
BENCHMARK(BM_LoopMultiply);
