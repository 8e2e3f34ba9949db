#include <benchmark/benchmark.h>

#include "skinband/lattice.hpp"
#include "skinband/limits.hpp"
#include "skinband/linalg.hpp"
#include "skinband/modes.hpp"

using namespace skinband;

namespace {

SymbolCoefficients prototype() { return SymbolCoefficients({0.0, 0.0}, {-2.0, 1.0}, {-0.9, -0.1}); }

void BM_EigDense(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    const auto t = toeplitz_matrix(collapsed_symbol(prototype()), m).matrix;
    for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(t));
    state.SetComplexityN(static_cast<long>(2 * m));
}
BENCHMARK(BM_EigDense)->RangeMultiplier(2)->Range(8, 128)->Complexity(benchmark::oNCubed);

void BM_SmallestSingularValue(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    const auto t = toeplitz_matrix(prototype(), m).matrix;
    for (auto _ : state) benchmark::DoNotOptimize(smallest_singular_value(t));
}
BENCHMARK(BM_SmallestSingularValue)->RangeMultiplier(2)->Range(8, 64);

void BM_PseudospectrumGrid(benchmark::State& state) {
    const Rectangle rect{-3.0, 3.0, -3.0, 3.0};
    for (auto _ : state) benchmark::DoNotOptimize(pseudospectrum_grid(prototype(), 10, rect, 32, 32, 1));
}
BENCHMARK(BM_PseudospectrumGrid)->Unit(benchmark::kMillisecond);

void BM_FiniteObcSpectrum(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(finite_obc_spectrum(prototype(), m));
}
BENCHMARK(BM_FiniteObcSpectrum)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_ObcEigenmodes(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(obc_eigenmodes(prototype(), 20));
}
BENCHMARK(BM_ObcEigenmodes)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
