// Gram truncation assembly across its three paths: the moment-matrix
// shortcut for diagonal maps, the generic tensor quadrature, and Monte
// Carlo. The truncation order N drives a (N+1)^2-dimensional matrix.

#include "benchmark/benchmark.h"

#include "riflab/gram.hpp"
#include "riflab/rif.hpp"

namespace {

riflab::RationalInnerFunction corner_rif() {
    riflab::Poly2 p(1, 1);
    p.at(0, 0) = 2.0;
    p.at(1, 0) = -1.0;
    p.at(0, 1) = -1.0;
    return riflab::make_rif(1.0, 0, 0, p);
}

riflab::RationalInnerFunction margin_rif() {
    riflab::Poly2 p(1, 1);
    p.at(0, 0) = 3.0;
    p.at(1, 0) = -1.0;
    p.at(0, 1) = -1.0;
    return riflab::make_rif(1.0, 0, 0, p);
}

riflab::QuadratureSpec coarse() {
    riflab::QuadratureSpec q;
    q.n_radial = 16;
    q.n_angular = 24;
    return q;
}

void gram_diagonal(benchmark::State& state) {
    auto map = riflab::SymbolMap::diagonal(corner_rif());
    int N = static_cast<int>(state.range(0));
    auto q = coarse();
    for (auto _ : state)
        benchmark::DoNotOptimize(riflab::gram_truncation(map, N, 0.0, 0.0, q));
}
BENCHMARK(gram_diagonal)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void gram_diagonal_default_nodes(benchmark::State& state) {
    auto map = riflab::SymbolMap::diagonal(corner_rif());
    riflab::QuadratureSpec q;
    for (auto _ : state)
        benchmark::DoNotOptimize(riflab::gram_truncation(map, 8, 0.0, 0.0, q));
}
BENCHMARK(gram_diagonal_default_nodes)->Unit(benchmark::kMillisecond);

void gram_general(benchmark::State& state) {
    riflab::SymbolMap map{corner_rif(), margin_rif()};
    int N = static_cast<int>(state.range(0));
    auto q = coarse();
    for (auto _ : state)
        benchmark::DoNotOptimize(riflab::gram_truncation(map, N, 0.0, 0.0, q));
}
BENCHMARK(gram_general)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void gram_monte_carlo(benchmark::State& state) {
    auto map = riflab::SymbolMap::diagonal(corner_rif());
    riflab::QuadratureSpec q;
    q.mode = riflab::QuadratureSpec::Mode::MonteCarlo;
    q.mc_samples = static_cast<std::uint64_t>(state.range(0));
    q.seed = 3;
    for (auto _ : state)
        benchmark::DoNotOptimize(riflab::gram_truncation(map, 4, 0.0, 0.0, q));
}
BENCHMARK(gram_monte_carlo)->Arg(20000)->Unit(benchmark::kMillisecond);

void basis_norm(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(riflab::basis_norm_sq(30, 2.5));
}
BENCHMARK(basis_norm);

} // namespace
