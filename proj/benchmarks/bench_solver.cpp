#include <benchmark/benchmark.h>

#include "parmax/coefficients.hpp"
#include "parmax/solver.hpp"

namespace {

void SolveForward1D(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const parmax::Cylinder g(1, 1.0, 1.0, n, n);
    const auto op = parmax::make_singular_drift(g, 1.0);
    const auto f = parmax::GridFunction::sample(
        g, [](const std::array<double, 2>&, double) { return 1.0; });
    for (auto _ : state) {
        benchmark::DoNotOptimize(parmax::solve_forward(op, f));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g.node_count()));
}
BENCHMARK(SolveForward1D)->Arg(41)->Arg(161)->Arg(641)->Unit(benchmark::kMillisecond);

void SolveForward2D(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const parmax::Cylinder g(2, 1.0, 1.0, n, 33);
    const auto op = parmax::make_heat(g);
    const auto f = parmax::GridFunction::sample(
        g, [](const std::array<double, 2>&, double) { return 1.0; });
    for (auto _ : state) {
        benchmark::DoNotOptimize(parmax::solve_forward(op, f));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g.node_count()));
}
BENCHMARK(SolveForward2D)->Arg(33)->Arg(65)->Unit(benchmark::kMillisecond);

}  // namespace
