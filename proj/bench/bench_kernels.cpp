#include <benchmark/benchmark.h>

#include "cheshire/delayed_choice.hpp"
#include "cheshire/ite.hpp"
#include "cheshire/kernels.hpp"
#include "cheshire/observables.hpp"
#include "cheshire/tsvf.hpp"

using cheshire::kernels::Execution;

namespace {

Execution exec_of(const benchmark::State& state) {
    return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_Surface(benchmark::State& state) {
    const auto spec = cheshire::spectral(
        cheshire::path_spin(cheshire::Particle::one, cheshire::Path::u));
    const auto alphas = cheshire::alpha_grid(256);
    const auto grid = cheshire::TimeGrid::uniform(0.0, 1.0, 256);
    const auto post = cheshire::post_exchange();
    for (auto _ : state) {
        benchmark::DoNotOptimize(cheshire::kernels::surface_cells(
            spec, alphas, grid.points(), post, cheshire::kOverlapEpsilon, exec_of(state)));
    }
}
BENCHMARK(BM_Surface)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);

void BM_Rates(benchmark::State& state) {
    const auto sel = cheshire::Selection::canonical_pair(0.7853981633974483,
                                                     cheshire::PostState::exchange);
    const cheshire::kernels::AmplitudeModel model(
        cheshire::spectral(cheshire::path_projector(cheshire::Particle::one, cheshire::Path::d)),
        sel.pre(), sel.post());
    const auto grid = cheshire::TimeGrid::uniform(0.0, 1.0, 1 << 16);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            cheshire::kernels::normalized_rates(model, sel.n0(), grid.points(), exec_of(state)));
    }
}
BENCHMARK(BM_Rates)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMicrosecond);

void BM_MonteCarlo(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(cheshire::kernels::simulate_trials(
            42, 1'000'000, 0.5, {0.25, 0.2}, exec_of(state)));
    }
    state.SetItemsProcessed(state.iterations() * 1'000'000);
}
BENCHMARK(BM_MonteCarlo)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
