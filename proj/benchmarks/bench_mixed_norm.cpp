#include <benchmark/benchmark.h>

#include <random>

#include "parmax/mixed_norm.hpp"

namespace {

parmax::GridFunction random_field(const parmax::Cylinder& g, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> values(g.node_count());
    for (auto& v : values) v = dist(rng);
    return parmax::GridFunction(g, std::move(values));
}

void MixedNorm1D(benchmark::State& state) {
    const int nx = static_cast<int>(state.range(0));
    const parmax::Cylinder g(1, 1.0, 1.0, nx, nx);
    const auto u = random_field(g, 1);
    auto spec = parmax::MixedNormSpec::plain(parmax::Exponent::integer(2),
                                             parmax::Exponent::integer(4));
    for (auto _ : state) {
        benchmark::DoNotOptimize(parmax::mixed_norm(u, spec));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g.node_count()));
}
BENCHMARK(MixedNorm1D)->Arg(41)->Arg(161)->Arg(641);

void MixedNorm2DSupInner(benchmark::State& state) {
    const int nx = static_cast<int>(state.range(0));
    const parmax::Cylinder g(2, 1.0, 1.0, nx, 33);
    const auto u = random_field(g, 2);
    auto spec = parmax::MixedNormSpec::plain(parmax::Exponent::integer(2),
                                             parmax::Exponent::infinity());
    for (auto _ : state) {
        benchmark::DoNotOptimize(parmax::mixed_norm(u, spec));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g.node_count()));
}
BENCHMARK(MixedNorm2DSupInner)->Arg(33)->Arg(65)->Arg(129);

}  // namespace
