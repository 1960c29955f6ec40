#include <benchmark/benchmark.h>

#include <cmath>

#include "parmax/coefficients.hpp"
#include "parmax/operator_ops.hpp"

namespace {

void ApplyOperatorSingularDrift(benchmark::State& state) {
    const int nx = static_cast<int>(state.range(0));
    const int dim = static_cast<int>(state.range(1));
    const parmax::Cylinder g(dim, 1.0, 1.0, nx, 17);
    const auto op = parmax::make_singular_drift(g, 1.5);
    const auto u = parmax::GridFunction::sample(
        g, [](const std::array<double, 2>& x, double t) {
            return std::sin(x[0] + t) * std::cos(x[1]);
        });
    for (auto _ : state) {
        benchmark::DoNotOptimize(parmax::apply_operator(op, u));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g.node_count()));
}
BENCHMARK(ApplyOperatorSingularDrift)
    ->Args({161, 1})
    ->Args({641, 1})
    ->Args({65, 2})
    ->Args({129, 2});

void DriftWeightEvaluation(benchmark::State& state) {
    const int nx = static_cast<int>(state.range(0));
    const parmax::Cylinder g(2, 1.0, 1.0, nx, 17);
    const auto op = parmax::make_singular_drift(g, 1.5);
    const parmax::ExponentPair e{parmax::Exponent::integer(2), parmax::Exponent::infinity()};
    for (auto _ : state) {
        benchmark::DoNotOptimize(parmax::drift_weight(op, e));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g.node_count()));
}
BENCHMARK(DriftWeightEvaluation)->Arg(65)->Arg(129);

}  // namespace
