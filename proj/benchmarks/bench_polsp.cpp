#include <benchmark/benchmark.h>

#include <cmath>

#include "polsp/dispersion.hpp"
#include "polsp/hopfield.hpp"
#include "polsp/kk.hpp"

using namespace polsp;

namespace {

ValidatedConfig config(int N, int Xi, double l = 0.5) {
    CavityConfig c;
    c.l = l;
    c.oscillators = {{10.0, 3.0}, {14.0, 1.5}};
    c.photon_modes = N;
    c.exciton_modes = Xi;
    return validate(c);
}

void BM_Overlaps(benchmark::State& state) {
    const auto v = config(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(modes::overlap_K(v));
}
BENCHMARK(BM_Overlaps)->Args({64, 8})->Args({512, 64});

void BM_DynamicalSpectrum(benchmark::State& state) {
    const auto v = config(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const TransverseWavenumber q(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(hopfield::spectrum(v, q));
}
BENCHMARK(BM_DynamicalSpectrum)->Args({16, 4})->Args({64, 16})->Args({128, 32})->Unit(benchmark::kMillisecond);

void BM_SecularRoots(benchmark::State& state) {
    const auto v = config(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const auto ov = modes::overlap_K(v);
    const TransverseWavenumber q(1.0);
    const auto w = dispersion::default_window(v, q);
    for (auto _ : state) benchmark::DoNotOptimize(dispersion::secular_roots(v, ov, q, w));
}
BENCHMARK(BM_SecularRoots)->Args({16, 4})->Args({64, 8})->Unit(benchmark::kMillisecond);

void BM_GreenRoots(benchmark::State& state) {
    CavityConfig c;
    c.l = 0.01;
    c.oscillators = {{10.0, 5.0}};
    c.exciton_modes = static_cast<int>(state.range(0));
    const auto v = validate(c);
    for (auto _ : state) benchmark::DoNotOptimize(dispersion::green_roots(v, TransverseWavenumber(0.0), {0.0, 20.0}));
}
BENCHMARK(BM_GreenRoots)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_KkForward(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    kk::SampledSeries s;
    for (int i = 0; i < n; ++i) {
        const double w = 10.0 * i / (n - 1);
        s.omega.push_back(w);
        s.value.push_back(0.1 * w / (std::pow(1.0 - w * w, 2) + 0.01 * w * w));
    }
    for (auto _ : state) benchmark::DoNotOptimize(kk::kk_forward(s));
    state.SetComplexityN(n);
}
BENCHMARK(BM_KkForward)->Arg(1000)->Arg(2000)->Arg(4000)->Unit(benchmark::kMillisecond)->Complexity();

}  // namespace

BENCHMARK_MAIN();
