#include <benchmark/benchmark.h>

#include "adkit/experiments.hpp"
#include "adkit/graphsym.hpp"
#include "adkit/matching.hpp"

using namespace adkit;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_EnumerateGraphs(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_graphs(6, exec_of(state)));
}

void BM_DeltaScan(benchmark::State& state) {
    const rmat r = diffusion_cov(prism_graph());
    for (auto _ : state) benchmark::DoNotOptimize(delta_scan(r, exec_of(state)));
}

void BM_ChirpRate(benchmark::State& state) {
    Rng rng(1, 0);
    WaveformSpec s;
    s.cls = WaveformClass::Chirp;
    s.mu = 0.5;
    const Observation x = waveform(s, rng);
    for (auto _ : state) benchmark::DoNotOptimize(estimate_chirp_rate(x, {}, exec_of(state)));
}

void BM_OrderingTrials(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(ordering_study(10, 30.0, 10.0, {10, 50}, 100, 1, exec_of(state)));
}

}  // namespace

BENCHMARK(BM_EnumerateGraphs)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DeltaScan)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ChirpRate)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_OrderingTrials)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
