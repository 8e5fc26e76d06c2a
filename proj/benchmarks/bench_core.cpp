// Core hot paths: polynomial and symbol evaluation, reflection, the gap
// form, and the Monte Carlo volume estimators.

#include "benchmark/benchmark.h"

#include "riflab/measure.hpp"
#include "riflab/poly.hpp"
#include "riflab/rif.hpp"
#include "riflab/stability.hpp"

namespace {

using riflab::cd;

riflab::Poly2 corner() {
    riflab::Poly2 p(1, 1);
    p.at(0, 0) = 2.0;
    p.at(1, 0) = -1.0;
    p.at(0, 1) = -1.0;
    return p;
}

riflab::Poly2 margin() {
    riflab::Poly2 p(1, 1);
    p.at(0, 0) = 3.0;
    p.at(1, 0) = -1.0;
    p.at(0, 1) = -1.0;
    return p;
}

// Dense degree-(n, n) coefficients with a dominant constant term, so the
// polynomial is also usable as a stable denominator.
riflab::Poly2 dense(int n) {
    riflab::Poly2 p(n, n);
    p.at(0, 0) = 4.0 * (n + 1) * (n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            if (i + j > 0) p.at(i, j) = 1.0 / (1.0 + i + 2.0 * j);
    return p;
}

void poly_eval(benchmark::State& state) {
    riflab::Poly2 p = dense(static_cast<int>(state.range(0)));
    cd z1(0.3, 0.4), z2(-0.5, 0.2);
    for (auto _ : state) benchmark::DoNotOptimize(p.eval(z1, z2));
}
BENCHMARK(poly_eval)->Arg(1)->Arg(4)->Arg(12);

void poly_reflect(benchmark::State& state) {
    riflab::Poly2 p = dense(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(riflab::reflect(p));
}
BENCHMARK(poly_reflect)->Arg(4)->Arg(12);

void rif_eval(benchmark::State& state) {
    auto phi = riflab::make_rif(1.0, 0, 0, corner());
    cd z1(0.3, 0.4), z2(-0.5, 0.2);
    for (auto _ : state) benchmark::DoNotOptimize(riflab::eval_rif(phi, z1, z2));
}
BENCHMARK(rif_eval);

void rif_nontangential_value(benchmark::State& state) {
    auto phi = riflab::make_rif(1.0, 0, 0, corner());
    riflab::TorusPoint tau{0.0, 0.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(riflab::nontangential_value(phi, tau));
}
BENCHMARK(rif_nontangential_value);

void gap_form_build(benchmark::State& state) {
    riflab::Poly2 p = dense(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(riflab::gap_form(p));
}
BENCHMARK(gap_form_build)->Arg(2)->Arg(6);

void torus_max_modulus(benchmark::State& state) {
    riflab::Poly2 p = corner();
    for (auto _ : state)
        benchmark::DoNotOptimize(riflab::max_modulus_torus(p, 256));
}
BENCHMARK(torus_max_modulus);

void bickel_constant(benchmark::State& state) {
    riflab::Poly2 p = margin();
    riflab::SamplerSpec spec{static_cast<std::uint64_t>(state.range(0)), 7,
                             std::nullopt};
    for (auto _ : state)
        benchmark::DoNotOptimize(riflab::estimate_bickel_constant(p, spec));
}
BENCHMARK(bickel_constant)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void box_volume_plain(benchmark::State& state) {
    riflab::CarlesonBox box{riflab::TorusPoint{0.0, 0.0}, 0.25, 0.25};
    riflab::SamplerSpec spec{static_cast<std::uint64_t>(state.range(0)), 11,
                             std::nullopt};
    for (auto _ : state)
        benchmark::DoNotOptimize(riflab::vbeta_box(2.0, box, spec));
}
BENCHMARK(box_volume_plain)->Arg(100000)->Unit(benchmark::kMillisecond);

void box_volume_stratified(benchmark::State& state) {
    riflab::CarlesonBox box{riflab::TorusPoint{0.0, 0.0}, 0.25, 0.25};
    riflab::SamplerSpec spec{static_cast<std::uint64_t>(state.range(0)), 11,
                             riflab::Stratum{riflab::TorusPoint{0.0, 0.0}, 0.5,
                                             0.5, 0.0}};
    for (auto _ : state)
        benchmark::DoNotOptimize(riflab::vbeta_box(2.0, box, spec));
}
BENCHMARK(box_volume_stratified)->Arg(100000)->Unit(benchmark::kMillisecond);

void pullback_box_volume(benchmark::State& state) {
    auto map = riflab::SymbolMap::diagonal(riflab::make_rif(1.0, 0, 0, corner()));
    riflab::CarlesonBox box{riflab::TorusPoint{0.0, 0.0}, 0.25, 0.25};
    riflab::SamplerSpec spec{static_cast<std::uint64_t>(state.range(0)), 11,
                             std::nullopt};
    for (auto _ : state)
        benchmark::DoNotOptimize(riflab::pullback_volume(map, box, 2.0, spec));
}
BENCHMARK(pullback_box_volume)->Arg(100000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
