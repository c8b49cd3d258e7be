#include <benchmark/benchmark.h>

#include "base_pulse/simulator.hpp"

using namespace base_pulse;

static void PropagatorConst(benchmark::State& state) {
    double omega = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagator_const(omega, 0.5, 1.3, 0.1));
        omega += 1e-9;
    }
}
BENCHMARK(PropagatorConst);

static void ChirpPropagator(benchmark::State& state) {
    const Waveform chirp = build_chirp({});
    for (auto _ : state) {
        benchmark::DoNotOptimize(waveform_propagator(chirp, 0.3));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(chirp.segments.size()));
}
BENCHMARK(ChirpPropagator);

static void RotationProfile(benchmark::State& state) {
    const auto seq = assemble_base_rotation({}, {}, Inversion::chirp);
    const OffsetGrid grid{-1.0, 1.0, static_cast<int>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(excitation_profile(seq, grid, BlochVector::plus_y(), 1));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(RotationProfile)->RangeMultiplier(4)->Range(16, 1024)->Complexity()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
